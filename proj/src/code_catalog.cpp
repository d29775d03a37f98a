#include "gpcb/code_catalog.hpp"

#include "gpcb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <regex>

namespace gpcb {

namespace {

int field_degree(int n)
{
    for (int m = 2; m <= 16; ++m)
        if ((1 << m) - 1 == n) return m;
    return 0;
}

CodeSpec bch_with_dimension(int m, int k)
{
    auto field = Field::shared(m);
    for (int t = 1; 2 * t < field->order(); ++t) {
        CodeSpec c = bch_spec(field, t);
        if (c.k == k) return c;
        if (c.k < k) break;
    }
    throw InvalidParams("no narrow-sense BCH code of length " + std::to_string(field->order()) + " has dimension " +
                        std::to_string(k));
}

CodeSpec rs_with_dimension(int m, int k)
{
    auto field = Field::shared(m);
    const int r = field->order() - k;
    if (r <= 0 || r % 2 != 0)
        throw InvalidParams("RS(" + std::to_string(field->order()) + "," + std::to_string(k) + ") needs n - k even");
    return rs_spec(field, r / 2);
}

// "bch:63,51,2"
CodeSpec parse_component(std::string_view text)
{
    static const std::regex re(R"(\s*(bch|rs)\s*:\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*)", std::regex::icase);
    std::cmatch mt;
    if (!std::regex_match(text.begin(), text.end(), mt, re))
        throw InvalidParams("cannot parse component code '" + std::string(text) + "' (expected bch:n,k,t or rs:n,k,t)");
    std::string kind = mt[1].str();
    std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
    const int n = std::stoi(mt[2].str());
    const int k = std::stoi(mt[3].str());
    const int t = std::stoi(mt[4].str());
    const int m = field_degree(n);
    if (m == 0) throw InvalidParams("code length " + std::to_string(n) + " is not 2^m - 1");
    auto field = Field::shared(m);
    CodeSpec c = kind == "bch" ? bch_spec(field, t) : rs_spec(field, t);
    if (c.k != k)
        throw InvalidParams(std::string(text) + ": t=" + std::to_string(t) + " gives k=" + std::to_string(c.k));
    return c;
}

NamedCode from_pair(CodeSpec a, CodeSpec b, int M)
{
    NamedCode nc;
    nc.construction = a.kind == b.kind ? Construction::c1 : Construction::c2;
    nc.code1 = std::move(a);
    nc.code2 = std::move(b);
    nc.M = M;
    return nc;
}

std::optional<NamedCode> resolve_gpcb(const std::string& family, long L, long K)
{
    for (long M : {1L, 10L, 100L, 1000L}) {
        if (L % M != 0 || K % M != 0) continue;
        const long l = L / M;
        const long k = K / M;
        if ((l + k) % 2 != 0) continue;
        const int n = static_cast<int>((l + k) / 2);
        const int m = field_degree(n);
        if (m < 3 || k <= 0 || k >= n) continue;
        try {
            if (family == "BCH") {
                CodeSpec c = bch_with_dimension(m, static_cast<int>(k));
                return from_pair(c, c, static_cast<int>(M));
            }
            if (family == "RS") {
                CodeSpec c = rs_with_dimension(m, static_cast<int>(k));
                return from_pair(c, c, static_cast<int>(M));
            }
            CodeSpec b = bch_with_dimension(m, static_cast<int>(k));
            CodeSpec r = rs_with_dimension(m, static_cast<int>(k));
            return from_pair(std::move(b), std::move(r), static_cast<int>(M));
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace

NamedCode parse_code(std::string_view name)
{
    static const std::regex gpcb_re(R"(\s*(?:G?PCB)-(BCH-RS|BCH|RS)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)",
                                    std::regex::icase);
    std::cmatch mt;
    if (std::regex_match(name.begin(), name.end(), mt, gpcb_re)) {
        std::string family = mt[1].str();
        std::transform(family.begin(), family.end(), family.begin(), [](unsigned char c) { return std::toupper(c); });
        if (auto nc = resolve_gpcb(family, std::stol(mt[2].str()), std::stol(mt[3].str()))) return *nc;
        throw InvalidParams("no component codes match '" + std::string(name) + "'");
    }

    const auto plus = name.find('+');
    if (plus == std::string_view::npos) {
        CodeSpec c = parse_component(name);
        return from_pair(c, c, 1);
    }
    return from_pair(parse_component(name.substr(0, plus)), parse_component(name.substr(plus + 1)), 1);
}

std::vector<std::string> catalog_code_names()
{
    return {"GPCB-BCH(75,51)",    "GPCB-BCH(141,113)",    "GPCB-BCH(271,239)",
            "GPCB-RS(73,53)",     "GPCB-RS(139,115)",     "GPCB-RS(267,243)",
            "GPCB-BCH-RS(75,51)", "GPCB-BCH-RS(141,113)", "GPCB-BCH-RS(271,239)"};
}

std::vector<std::string> experiment_code_names()
{
    return {"GPCB-RS(69,57)",  "GPCB-RS(141,113)",  "GPCB-RS(271,239)",  "GPCB-RS(279,231)",
            "GPCB-BCH(69,57)", "GPCB-BCH(148,106)", "GPCB-BCH(279,231)", "GPCB-BCH-RS(69,57)",
            "GPCB-BCH-RS(279,231)"};
}

} // namespace gpcb
