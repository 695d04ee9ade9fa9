#pragma once
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corisk::detail {

struct FamilySpec {
    std::string name;
    std::vector<double> args;
};

// Split "name:a,b,..." into the family name and numeric arguments.
inline FamilySpec parse_family(std::string_view text, const char* what) {
    FamilySpec out;
    const auto colon = text.find(':');
    out.name = std::string(text.substr(0, colon));
    if (colon == std::string_view::npos) return out;
    std::string rest(text.substr(colon + 1));
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string tok = comma == std::string::npos
                                    ? rest.substr(pos)
                                    : rest.substr(pos, comma - pos);
        if (tok.empty())
            throw std::invalid_argument(std::string(what) + ": empty parameter in '" +
                                        std::string(text) + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad parameter '" + tok +
                                        "'");
        out.args.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline void need_args(const FamilySpec& fs, std::size_t n, const char* what) {
    if (fs.args.size() != n)
        throw std::invalid_argument(std::string(what) + " '" + fs.name +
                                    "': wrong parameter count");
}

} // namespace corisk::detail
