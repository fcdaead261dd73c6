#ifndef CIPOLLA_EXPORT_HPP_INCLUDED
#define CIPOLLA_EXPORT_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/constants.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/exact_poly.hpp>
#include <cipolla/polyengine.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cipolla
{
/// Key order is kept as inserted so output is stable and round-trips.
using Json = nlohmann::ordered_json;

/// Bumped whenever a cached quantity could change value.
inline constexpr int kCacheVersion = 1;

// Big integers always travel as decimal strings.

inline Json to_json(const ExactPoly& p)
{
    ExactPoly r = p.reduced();
    Json coeffs = Json::array();
    for (const auto& c : r.scaled_coeffs())
        coeffs.push_back(c.get_str());
    return Json{{"denom", r.denom().get_str()}, {"coeffs", coeffs}};
}

inline ExactPoly poly_from_json(const Json& j)
{
    std::vector<BigInt> c;
    for (const auto& s : j.at("coeffs"))
        c.emplace_back(s.get<std::string>());
    return ExactPoly(std::move(c), BigInt(j.at("denom").get<std::string>()));
}

inline Json to_json(const CoeffTriangle& t)
{
    Json rows = Json::array();
    for (int n = t.first_row(); n <= t.last_row(); ++n)
    {
        Json row = Json::array();
        for (const auto& v : t.row(n))
            row.push_back(v.get_str());
        rows.push_back(std::move(row));
    }
    Json j{{"kind", t.kind() == TriangleKind::a ? "a" : "b"}};
    if (t.first_row() != 0)
        j["first_row"] = t.first_row();
    j["rows"] = std::move(rows);
    return j;
}

inline CoeffTriangle triangle_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "a" && kind != "b")
        throw DomainError("triangle_from_json: unknown kind '" + kind + "'");
    const int first = j.contains("first_row") ? j.at("first_row").get<int>() : 0;
    std::vector<std::vector<BigInt>> rows;
    for (const auto& r : j.at("rows"))
    {
        std::vector<BigInt> row;
        for (const auto& s : r)
            row.emplace_back(s.get<std::string>());
        rows.push_back(std::move(row));
    }
    return CoeffTriangle(kind == "a" ? TriangleKind::a : TriangleKind::b, first, std::move(rows));
}

/// One line per entry: row,col,value.
inline std::string to_csv(const CoeffTriangle& t)
{
    std::ostringstream os;
    os << "row,col,value\n";
    for (int n = t.first_row(); n <= t.last_row(); ++n)
    {
        const auto& row = t.row(n);
        for (std::size_t k = 0; k < row.size(); ++k)
            os << n << ',' << k << ',' << row[k].get_str() << '\n';
    }
    return os.str();
}

inline Json to_json(const ConstantsRow& r)
{
    const int sig = r.digits;
    return Json{{"N", r.N},
                {"digits", r.digits},
                {"c", r.c.to_sci(sig)},
                {"d", r.d.to_sci(sig)},
                {"alpha", r.alpha.to_sci(sig)},
                {"beta", r.beta.to_sci(sig)},
                {"f", r.f.to_sci(sig)},
                {"x", r.x.to_sci(sig)}};
}

inline ConstantsRow constants_row_from_json(const Json& j)
{
    ConstantsRow r;
    r.N = j.at("N").get<int>();
    r.digits = j.at("digits").get<int>();
    const Precision p = Precision::digits(r.digits);
    auto get = [&](const char* k) { return BigReal::parse(j.at(k).get<std::string>(), p); };
    r.c = get("c");
    r.d = get("d");
    r.alpha = get("alpha");
    r.beta = get("beta");
    r.f = get("f");
    r.x = get("x");
    return r;
}

inline Json to_json(const ZReport& z, int digits)
{
    return Json{{"N", z.N},
                {"digits", digits},
                {"K", z.K},
                {"R", z.R.get_str()},
                {"x_K", z.x_K.to_sci(digits)},
                {"z_prime", z.z_prime.to_sci(digits)},
                {"z", z.z.to_sci(digits)},
                {"grid_points", z.grid_points},
                {"violation_found", z.violation_found}};
}

inline ZReport z_report_from_json(const Json& j)
{
    ZReport z;
    const Precision p = Precision::digits(j.at("digits").get<int>());
    z.N = j.at("N").get<int>();
    z.K = j.at("K").get<int>();
    z.R = BigInt(j.at("R").get<std::string>());
    z.x_K = BigReal::parse(j.at("x_K").get<std::string>(), p);
    z.z_prime = BigReal::parse(j.at("z_prime").get<std::string>(), p);
    z.z = BigReal::parse(j.at("z").get<std::string>(), p);
    z.grid_points = j.at("grid_points").get<std::size_t>();
    z.violation_found = j.at("violation_found").get<bool>();
    return z;
}

/// Write-once JSON files under a directory, keyed by (version, kind, N, digits).
/// An empty directory disables caching.
class ConstantsCache
{
public:
    explicit ConstantsCache(std::filesystem::path dir = {}) : dir_(std::move(dir)) {}

    bool enabled() const noexcept
    {
        return !dir_.empty();
    }

    std::filesystem::path path_for(const std::string& kind, int N, int digits) const
    {
        return dir_ / (kind + "-v" + std::to_string(kCacheVersion) + "-N" + std::to_string(N) + "-d"
                       + std::to_string(digits) + ".json");
    }

    ConstantsRow row(int N, int digits) const
    {
        if (auto j = load("row", N, digits))
            return constants_row_from_json(*j);
        ConstantsRow r = x_const(N, digits);
        store("row", N, digits, to_json(r));
        return r;
    }

    ZReport z(int N, int digits) const
    {
        if (auto j = load("z", N, digits))
            return z_report_from_json(*j);
        ZReport r = z_const(N, digits);
        store("z", N, digits, to_json(r, digits));
        return r;
    }

private:
    std::optional<Json> load(const std::string& kind, int N, int digits) const
    {
        if (!enabled())
            return std::nullopt;
        std::ifstream in(path_for(kind, N, digits));
        if (!in)
            return std::nullopt;
        Json j = Json::parse(in, nullptr, false);
        // A stale or damaged entry is recomputed, not trusted.
        if (j.is_discarded() || !j.contains("version") || j["version"] != kCacheVersion)
            return std::nullopt;
        return j.at("value");
    }

    void store(const std::string& kind, int N, int digits, const Json& value) const
    {
        if (!enabled())
            return;
        std::filesystem::create_directories(dir_);
        const auto target = path_for(kind, N, digits);
        const auto tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp);
            out << Json{{"version", kCacheVersion}, {"value", value}}.dump(2) << '\n';
        }
        std::filesystem::rename(tmp, target);
    }

    std::filesystem::path dir_;
};
} // namespace cipolla

#endif // CIPOLLA_EXPORT_HPP_INCLUDED
