#include "sidecar.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "parksent/timeutil.hpp"
#include "parksent/version.hpp"

namespace parksent::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for hashing");

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        char b[3];
        std::snprintf(b, sizeof b, "%02x", digest[i]);
        hex += b;
    }
    return hex;
}

nlohmann::json make_sidecar(const std::string& subcommand, const nlohmann::json& resolved_config,
                            const std::vector<std::filesystem::path>& inputs,
                            const std::vector<std::string>& outputs) {
    nlohmann::json meta;
    meta["tool"] = "parksent";
    meta["version"] = kVersion;
    meta["subcommand"] = subcommand;
    const auto now = std::chrono::system_clock::now();
    meta["created_utc"] = format_rfc3339_utc(
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
    meta["config"] = resolved_config;
    nlohmann::json ins = nlohmann::json::array();
    for (const auto& path : inputs)
        ins.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
    meta["inputs"] = ins;
    meta["outputs"] = outputs;
    return meta;
}

}  // namespace parksent::cli
