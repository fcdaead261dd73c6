#include <cipolla/constants.hpp>
#include <cipolla/expansion.hpp>
#include <cipolla/export.hpp>
#include <cipolla/numerics.hpp>
#include <cipolla/polyengine.hpp>
#include <cipolla/primes.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cipolla;

namespace
{
enum class Format
{
    text,
    json,
    csv
};

struct RunConfig
{
    int digits = 30;
    bool json = false;
    bool csv = false;
    int jobs = 1;
    std::string cache_dir;
    std::uint64_t sieve_limit = kDefaultSieveCap;

    Format format() const
    {
        return json ? Format::json : csv ? Format::csv : Format::text;
    }
};

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

void add_common(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--digits", cfg.digits, "Significant decimal digits")
        ->envname("CIPOLLA_DIGITS")
        ->check(CLI::Range(6, kMaxDigits));
    auto* j = cmd->add_flag("--json", cfg.json, "Machine-readable JSON output");
    auto* c = cmd->add_flag("--csv", cfg.csv, "CSV output where a table is produced");
    j->excludes(c);
    cmd->add_option("--jobs", cfg.jobs, "Worker threads for sweeps")->envname("CIPOLLA_JOBS")->check(CLI::Range(1, 256));
    cmd->add_option("--cache-dir", cfg.cache_dir, "Directory for cached constants (off when empty)")
        ->envname("CIPOLLA_CACHE_DIR");
    cmd->add_option("--sieve-limit", cfg.sieve_limit, "Largest integer the prime sieve may cover")
        ->envname("CIPOLLA_SIEVE_LIMIT");
}

void emit(const Json& j)
{
    std::cout << j.dump(2) << '\n';
}

BigReal parse_arg(const std::string& s, int digits)
{
    const int d = std::max<int>(digits + 20, static_cast<int>(s.size()) + 5);
    return BigReal::parse(s, Precision::digits(std::min(d, kMaxDigits)));
}

/// "1-15,20,30" -> {1, ..., 15, 20, 30}
std::vector<int> parse_list(const std::string& spec)
{
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        auto dash = item.find('-', 1);
        try
        {
            if (dash == std::string::npos)
                out.push_back(std::stoi(item));
            else
                for (int k = std::stoi(item.substr(0, dash)), e = std::stoi(item.substr(dash + 1)); k <= e; ++k)
                    out.push_back(k);
        }
        catch (const std::logic_error&)
        {
            throw CLI::ValidationError("list", "cannot parse '" + item + "'");
        }
    }
    return out;
}

std::string join(const std::vector<std::uint64_t>& v, std::size_t max_items = 50)
{
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < max_items; ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    if (v.size() > max_items)
        s += " ...";
    return s;
}

// ---- poly / triangle -------------------------------------------------------

int cmd_poly(const RunConfig& cfg, int n, bool with_q)
{
    const ExactPoly P = poly_P(n);
    std::optional<ExactPoly> Q;
    if (with_q)
        Q = poly_Q(n);
    switch (cfg.format())
    {
    case Format::json:
        if (Q)
            emit(Json{{"n", n}, {"P", to_json(P)}, {"Q", to_json(*Q)}});
        else
            std::cout << to_json(P).dump() << '\n';
        break;
    case Format::csv:
        std::cout << "poly,power,numerator,denom\n";
        for (const auto& [name, poly] : std::vector<std::pair<const char*, ExactPoly>>{{"P", P}})
            for (std::size_t k = 0; k < poly.reduced().scaled_coeffs().size(); ++k)
                std::cout << name << ',' << k << ',' << poly.reduced().scaled_coeffs()[k].get_str() << ','
                          << poly.reduced().denom().get_str() << '\n';
        if (Q)
            for (std::size_t k = 0; k < Q->reduced().scaled_coeffs().size(); ++k)
                std::cout << "Q," << k << ',' << Q->reduced().scaled_coeffs()[k].get_str() << ','
                          << Q->reduced().denom().get_str() << '\n';
        break;
    case Format::text:
        if (Q)
            std::cout << "P_" << n << " = " << P.to_string() << "\nQ_" << n << " = " << Q->to_string() << '\n';
        else
            std::cout << P.to_string() << '\n';
        break;
    }
    return kExitOk;
}

int cmd_triangle(const RunConfig& cfg, const std::string& kind, int N)
{
    CoeffTriangle t = kind == "a" ? coeff_triangle_a(N) : coeff_triangle_b(N);
    switch (cfg.format())
    {
    case Format::json:
        emit(to_json(t));
        break;
    case Format::csv:
        std::cout << to_csv(t);
        break;
    case Format::text:
    {
        std::size_t width = 1;
        for (int n = t.first_row(); n <= t.last_row(); ++n)
            for (const auto& v : t.row(n))
                width = std::max(width, v.get_str().size());
        for (int n = t.first_row(); n <= t.last_row(); ++n)
        {
            for (int k = 0; k <= t.last_row(); ++k)
                std::cout << (k ? " " : "") << std::setw(static_cast<int>(width)) << t.at(n, k).get_str();
            std::cout << '\n';
        }
        break;
    }
    }
    return kExitOk;
}

// ---- constants --------------------------------------------------------------

int cmd_constants(const RunConfig& cfg, const std::string& list, bool with_z, bool with_m)
{
    ConstantsCache cache(cfg.cache_dir);
    const int shown = 6;
    std::vector<ConstantsRow> rows;
    for (int N : parse_list(list))
        rows.push_back(cache.row(N, cfg.digits));
    std::vector<ZReport> zs;
    if (with_z)
        for (int N = 2; N <= 11; ++N)
            zs.push_back(cache.z(N, cfg.digits));
    std::vector<MaxReport> ms;
    if (with_m)
        for (int n = 2; n <= 10; ++n)
            ms.push_back(m_max(n, cfg.digits));

    if (cfg.format() == Format::json)
    {
        Json j{{"digits", cfg.digits}, {"rows", Json::array()}};
        for (const auto& r : rows)
            j["rows"].push_back(to_json(r));
        if (with_z)
        {
            j["z"] = Json::array();
            for (const auto& z : zs)
                j["z"].push_back(to_json(z, cfg.digits));
        }
        if (with_m)
        {
            j["M"] = Json::array();
            for (const auto& m : ms)
                j["M"].push_back(Json{{"n", m.n}, {"value", m.value.to_sci(cfg.digits)}});
        }
        emit(j);
        return kExitOk;
    }
    if (cfg.format() == Format::csv)
    {
        std::cout << "N,c,d,alpha,beta,f,x\n";
        for (const auto& r : rows)
            std::cout << r.N << ',' << r.c.to_sci(cfg.digits) << ',' << r.d.to_sci(cfg.digits) << ','
                      << r.alpha.to_sci(cfg.digits) << ',' << r.beta.to_sci(cfg.digits) << ','
                      << r.f.to_sci(cfg.digits) << ',' << r.x.to_sci(cfg.digits) << '\n';
        return kExitOk;
    }
    std::cout << std::setw(4) << "N" << std::setw(14) << "c_N" << std::setw(14) << "d_N" << std::setw(14) << "x_N"
              << '\n';
    for (const auto& r : rows)
        std::cout << std::setw(4) << r.N << std::setw(14) << r.c.to_fixed(shown) << std::setw(14)
                  << r.d.to_fixed(shown) << std::setw(14) << r.x.to_fixed(shown) << '\n';
    if (with_z)
    {
        std::cout << '\n' << std::setw(4) << "N" << std::setw(14) << "z_N" << std::setw(14) << "z'_N" << '\n';
        for (const auto& z : zs)
            std::cout << std::setw(4) << z.N << std::setw(14) << z.z.to_fixed(shown) << std::setw(14)
                      << z.z_prime.to_fixed(2) << '\n';
    }
    if (with_m)
    {
        std::cout << '\n';
        for (const auto& m : ms)
            std::cout << "M_" << m.n << " = " << m.value.to_sci(7) << '\n';
    }
    return kExitOk;
}

// ---- evaluation ---------------------------------------------------------------

int cmd_ali(const RunConfig& cfg, const std::string& us, std::optional<int> terms, bool automatic)
{
    const BigReal u = parse_arg(us, cfg.digits);
    Json j{{"u", us}, {"digits", cfg.digits}};
    std::string text;
    if (automatic || terms)
    {
        ExpansionResult r = automatic ? auto_expand(u, cfg.digits) : f_N_eval(u, *terms, cfg.digits);
        j["value"] = r.value.to_sci(cfg.digits);
        j["N"] = r.N_used;
        j["radius"] = r.bound.is_infinite() ? "inf" : r.bound.radius.to_sci(6);
        j["theorem"] = to_string(r.bound.justification);
        if (r.heuristic_error)
            j["heuristic_error"] = r.heuristic_error->to_sci(6);
    }
    else
    {
        // Newton value; its radius is the tolerance of the final sign check.
        const BigReal a = ali(u, cfg.digits);
        BigReal tol = abs(u.at(a.precision()));
        if (tol < 1L)
            tol = BigReal(1L, a.precision());
        tol /= pow(BigReal(10L, a.precision()), static_cast<long>(cfg.digits));
        j["value"] = a.to_sci(cfg.digits);
        j["N"] = nullptr;
        j["radius"] = (4L * tol * log(a)).to_sci(6);
        j["theorem"] = "NEWTON";
    }
    if (cfg.format() == Format::json)
    {
        emit(j);
        return kExitOk;
    }
    std::cout << "value   " << j["value"].get<std::string>() << '\n';
    std::cout << "N_used  " << (j["N"].is_null() ? std::string("-") : std::to_string(j["N"].get<int>())) << '\n';
    std::cout << "radius  " << j["radius"].get<std::string>() << '\n';
    std::cout << "theorem " << j["theorem"].get<std::string>() << '\n';
    if (j.contains("heuristic_error"))
        std::cout << "last-term error " << j["heuristic_error"].get<std::string>() << '\n';
    return kExitOk;
}

int cmd_li(const RunConfig& cfg, const std::string& xs)
{
    BigReal v = li(parse_arg(xs, cfg.digits), cfg.digits);
    if (cfg.format() == Format::json)
        emit(Json{{"x", xs}, {"digits", cfg.digits}, {"value", v.to_sci(cfg.digits)}});
    else
        std::cout << v.to_sci(cfg.digits) << '\n';
    return kExitOk;
}

int cmd_nthprime(const RunConfig& cfg, std::uint64_t n)
{
    std::uint64_t p = nth_prime(n, cfg.sieve_limit);
    if (cfg.format() == Format::json)
        emit(Json{{"n", n}, {"p", p}});
    else
        std::cout << p << '\n';
    return kExitOk;
}

int cmd_sprime(const RunConfig& cfg, const std::string& ns, int N)
{
    BigReal v = s_N(parse_arg(ns, cfg.digits), N, cfg.digits);
    if (cfg.format() == Format::json)
        emit(Json{{"n", ns}, {"N", N}, {"digits", cfg.digits}, {"value", v.to_sci(cfg.digits)}});
    else
        std::cout << v.to_sci(cfg.digits) << '\n';
    return kExitOk;
}

// ---- primes -------------------------------------------------------------------

Json sweep_json(const SweepReport& r)
{
    Json v = Json::array();
    for (auto n : r.violations)
        v.push_back(n);
    return Json{{"check", r.check}, {"from", r.lo},         {"to", r.hi},
                {"checked", r.checked}, {"escalated", r.escalated}, {"violations", v}};
}

void sweep_text(const SweepReport& r)
{
    std::cout << r.check << " [" << r.lo << ", " << r.hi << "]: " << r.checked << " checked, "
              << r.violations.size() << " violations";
    if (!r.violations.empty())
        std::cout << ": " << join(r.violations);
    std::cout << '\n';
}

int cmd_verify(const RunConfig& cfg, const std::string& check, std::uint64_t from, std::uint64_t to)
{
    std::vector<SweepReport> reports;
    if (check == "tdistance")
        reports.push_back(check_tdistance(std::max<std::uint64_t>(from, 1), to, cfg.digits, cfg.jobs, cfg.sieve_limit));
    else if (check == "classical")
    {
        ClassicalReport c = check_classical(to, cfg.jobs, cfg.sieve_limit);
        reports = {c.lower_nlogn, c.lower_second, c.upper};
    }
    else
        reports.push_back(check_schoenfeld(to, cfg.jobs, cfg.sieve_limit));

    bool ok = true;
    for (const auto& r : reports)
        ok = ok && r.ok();
    if (cfg.format() == Format::json)
    {
        Json j{{"check", check}, {"ok", ok}, {"reports", Json::array()}};
        for (const auto& r : reports)
            j["reports"].push_back(sweep_json(r));
        emit(j);
    }
    else
        for (const auto& r : reports)
            sweep_text(r);
    return ok ? kExitOk : kExitViolations;
}

int cmd_roots(const RunConfig& cfg, const std::string& list)
{
    Json out = Json::array();
    for (int n : parse_list(list))
    {
        auto roots = real_roots(n, cfg.digits);
        Json rs = Json::array();
        for (const auto& r : roots)
            rs.push_back(Json{{"value", r.value.to_fixed(cfg.digits)},
                              {"lo", BigReal(r.lo, Precision::digits(cfg.digits + 5)).to_sci(cfg.digits + 2)},
                              {"hi", BigReal(r.hi, Precision::digits(cfg.digits + 5)).to_sci(cfg.digits + 2)},
                              {"exact", r.exact}});
        if (cfg.format() == Format::json)
            out.push_back(Json{{"n", n}, {"roots", rs}});
        else if (cfg.format() == Format::csv)
        {
            if (out.empty())
                std::cout << "n,index,value\n";
            out.push_back(n);
            for (std::size_t i = 0; i < roots.size(); ++i)
                std::cout << n << ',' << i << ',' << roots[i].value.to_fixed(cfg.digits) << '\n';
        }
        else
        {
            std::cout << "P_" << n << ":";
            if (roots.empty())
                std::cout << " no real roots";
            for (const auto& r : roots)
                std::cout << ' ' << r.value.to_fixed(std::min(cfg.digits, 12));
            std::cout << '\n';
        }
    }
    if (cfg.format() == Format::json)
        emit(out);
    return kExitOk;
}

int cmd_r3(const RunConfig& cfg)
{
    const int digits = std::max(cfg.digits, 45);
    R3Report r = r3_window(digits);
    const int sig = 45;
    Json j{{"digits", digits},
           {"y0", r.y0.to_sci(15)},
           {"y0_lo", r.y0_lo.to_sci(20)},
           {"y0_hi", r.y0_hi.to_sci(20)},
           {"n_threshold", r.n_threshold.to_sci(20)},
           {"n", r.n.to_sci(2)},
           {"s3", r.s3.to_sci(sig)},
           {"ali", r.ali_n.to_sci(sig)},
           {"radius", r.tdistance_radius.to_sci(20)},
           {"upper", r.upper.to_sci(sig)},
           {"upper_below_s3", r.upper_below_s3}};
    if (cfg.format() == Format::json)
        emit(j);
    else
        for (auto it = j.begin(); it != j.end(); ++it)
            std::cout << std::left << std::setw(16) << it.key() << (it->is_string() ? it->get<std::string>() : it->dump())
                      << '\n';
    return r.upper_below_s3 ? kExitOk : kExitViolations;
}

int cmd_bench(const RunConfig& cfg, const std::string& list)
{
    Json out = Json::array();
    if (cfg.format() == Format::text)
        std::cout << std::setw(6) << "N" << std::setw(14) << "ops" << std::setw(14) << "formula" << std::setw(12)
                  << "seconds" << '\n';
    else if (cfg.format() == Format::csv)
        std::cout << "N,ops,formula,seconds\n";
    for (int N : parse_list(list))
    {
        auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t ops = op_count_model(N);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::uint64_t formula = op_count_formula(N);
        if (cfg.format() == Format::json)
            out.push_back(Json{{"N", N}, {"ops", ops}, {"formula", formula}, {"seconds", secs}});
        else if (cfg.format() == Format::csv)
            std::cout << N << ',' << ops << ',' << formula << ',' << secs << '\n';
        else
            std::cout << std::setw(6) << N << std::setw(14) << ops << std::setw(14) << formula << std::setw(12)
                      << std::fixed << std::setprecision(4) << secs << '\n';
    }
    if (cfg.format() == Format::json)
        emit(out);
    return kExitOk;
}
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inverse logarithmic integral expansion toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::function<int()> action;

    auto* poly = app.add_subcommand("poly", "Print P_n (and Q_n) exactly");
    int poly_n = 0;
    bool poly_q = false;
    poly->add_option("--n", poly_n, "Index n >= 0")->required()->check(CLI::NonNegativeNumber);
    poly->add_flag("--q", poly_q, "Also print Q_n (n >= 1)");
    add_common(poly, cfg);
    poly->callback([&] { action = [&] { return cmd_poly(cfg, poly_n, poly_q); }; });

    auto* tri = app.add_subcommand("triangle", "Coefficient triangle a(n,k) or b(n,k)");
    std::string tri_kind = "a";
    int tri_N = 7;
    tri->add_option("--kind", tri_kind, "a or b")->check(CLI::IsMember({"a", "b"}));
    tri->add_option("--N", tri_N, "Last row")->check(CLI::Range(1, 100000));
    add_common(tri, cfg);
    tri->callback([&] { action = [&] { return cmd_triangle(cfg, tri_kind, tri_N); }; });

    auto* cons = app.add_subcommand("constants", "Thresholds c_N, d_N, x_N, z_N and the maxima M_n");
    std::string cons_list = "1-15,20,30,40,50,60";
    bool cons_no_z = false, cons_m = false;
    cons->add_option("--N", cons_list, "Orders, e.g. 1-15,20,30");
    cons->add_flag("--no-z", cons_no_z, "Skip the z_N row");
    cons->add_flag("--maxima", cons_m, "Also print M_2..M_10");
    add_common(cons, cfg);
    cons->callback([&] { action = [&] { return cmd_constants(cfg, cons_list, !cons_no_z, cons_m); }; });

    auto* alic = app.add_subcommand("ali", "Inverse logarithmic integral, optionally by the expansion");
    std::string ali_u;
    int ali_terms = -1;
    bool ali_auto = false;
    alic->add_option("--u", ali_u, "Argument, decimal or mantissa-e-exponent")->required();
    auto* terms_opt = alic->add_option("--terms", ali_terms, "Expansion order N")->check(CLI::NonNegativeNumber);
    auto* auto_opt = alic->add_flag("--auto", ali_auto, "Stop the expansion at its smallest term");
    terms_opt->excludes(auto_opt);
    add_common(alic, cfg);
    alic->callback([&] {
        action = [&] {
            return cmd_ali(cfg, ali_u, ali_terms >= 0 ? std::optional<int>(ali_terms) : std::nullopt, ali_auto);
        };
    });

    auto* lic = app.add_subcommand("li", "Logarithmic integral");
    std::string li_x;
    lic->add_option("--x", li_x, "Argument > 1")->required();
    add_common(lic, cfg);
    lic->callback([&] { action = [&] { return cmd_li(cfg, li_x); }; });

    auto* np = app.add_subcommand("nthprime", "The n-th prime by sieve");
    std::uint64_t np_n = 1;
    np->add_option("--n", np_n, "Index n >= 1")->required()->check(CLI::PositiveNumber);
    add_common(np, cfg);
    np->callback([&] { action = [&] { return cmd_nthprime(cfg, np_n); }; });

    auto* sp = app.add_subcommand("sprime", "Truncated prime approximant s_N(n)");
    std::string sp_n;
    int sp_N = 3;
    sp->add_option("--n", sp_n, "n >= 2")->required();
    sp->add_option("--N", sp_N, "Order N >= 0")->check(CLI::NonNegativeNumber);
    add_common(sp, cfg);
    sp->callback([&] { action = [&] { return cmd_sprime(cfg, sp_n, sp_N); }; });

    // verify / roots / r3 exist at top level and under `primes`.
    std::string v_check = "tdistance";
    std::uint64_t v_from = 1, v_to = 385;
    std::string roots_list = "1-23";
    auto add_verify = [&](CLI::App* parent) {
        auto* v = parent->add_subcommand("verify", "Sweep an inequality against sieve ground truth");
        v->add_option("--check", v_check, "tdistance, classical or schoenfeld")
            ->required()
            ->check(CLI::IsMember({"tdistance", "classical", "schoenfeld"}));
        v->add_option("--to", v_to, "Upper end of the sweep")->required();
        v->add_option("--from", v_from, "Lower end (tdistance only)");
        add_common(v, cfg);
        v->callback([&] { action = [&] { return cmd_verify(cfg, v_check, v_from, v_to); }; });
    };
    auto add_roots = [&](CLI::App* parent) {
        auto* r = parent->add_subcommand("roots", "Real roots of P_n by Sturm sequences");
        r->add_option("--n", roots_list, "Indices, e.g. 9 or 1-23");
        add_common(r, cfg);
        r->callback([&] { action = [&] { return cmd_roots(cfg, roots_list); }; });
    };
    auto add_r3 = [&](CLI::App* parent) {
        auto* r = parent->add_subcommand("r3", "Window computation for r_3 (digits >= 45)");
        add_common(r, cfg);
        r->callback([&] { action = [&] { return cmd_r3(cfg); }; });
    };
    add_verify(&app);
    add_roots(&app);
    add_r3(&app);
    auto* primes = app.add_subcommand("primes", "verify, roots and r3 grouped");
    primes->require_subcommand(1);
    add_verify(primes);
    add_roots(primes);
    add_r3(primes);

    auto* bench = app.add_subcommand("bench", "Operation counts of the triangle algorithm");
    std::string bench_list = "2,10,50,100,200,400";
    bench->add_option("--N", bench_list, "Orders, e.g. 100 or 2,10,50");
    add_common(bench, cfg);
    bench->callback([&] { action = [&] { return cmd_bench(cfg, bench_list); }; });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitError;
    }

    try
    {
        return action ? action() : kExitError;
    }
    catch (const CLI::ParseError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitError;
}
