#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptlab::detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

// key=value parameters from registry spec strings like
// "distinct-elements:tau=5,sigma=3" (':' and ',' both separate pairs).
struct param_map {
    std::unordered_map<std::string, std::string> kv;

    static param_map parse(const std::vector<std::string>& tokens, std::size_t from) {
        param_map pm;
        for (std::size_t i = from; i < tokens.size(); ++i) {
            for (const std::string& piece : split(tokens[i], ',')) {
                if (piece.empty()) continue;
                const auto eq = piece.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("expected key=value, got '" + piece + "'");
                pm.kv[piece.substr(0, eq)] = piece.substr(eq + 1);
            }
        }
        return pm;
    }

    std::optional<std::uint64_t> get_uint(const std::string& key) const {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return std::stoull(it->second);
    }

    std::uint64_t require_uint(const std::string& key, const std::string& context) const {
        const auto v = get_uint(key);
        if (!v) throw std::invalid_argument(context + ": missing required parameter '" + key + "'");
        return *v;
    }
};

}  // namespace ptlab::detail
