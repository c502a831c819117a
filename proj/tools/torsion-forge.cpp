// torsion-forge: construct superelliptic curves y^k = F(x) whose jacobians
// carry a rational point of order dividing N, and verify the certificates.

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "torsion_forge/torsion_forge.hpp"

using namespace tforge;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

template <typename Fn>
int with_field(const std::string& tag, Fn&& fn) {
    if (tag == "Q") return fn(RationalField{});
    if (tag == "Qt" || tag == "Q(t)") return fn(RationalFunctionField{});
    if (tag.rfind("Fp:", 0) == 0) return fn(PrimeField(parse_integer(tag.substr(3))));
    throw Error("unknown field '" + tag + "' (expected Q, Qt or Fp:<p>)");
}

std::vector<Integer> parse_integer_list(const std::string& csv) {
    std::vector<Integer> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        if (comma > start) out.push_back(parse_integer(csv.substr(start, comma - start)));
        start = comma + 1;
        if (comma == csv.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------- lift ----

struct LiftOpts {
    int k = 0;
    int level = 1;
    std::string b, u, R1, field;
    bool explain = false;
};

int run_lift(const LiftOpts& o) {
    return with_field(o.field, [&](auto fld) {
        using K = decltype(fld);
        LiftProblem<K> pr{o.k, parse_poly(fld, o.b), parse_poly(fld, o.u),
                          parse_poly(fld, o.R1), o.level};
        LiftResult<K> res = lift(pr, o.explain);
        bool ok = verify_lift(res, pr);
        std::cout << lift_to_json(pr, res, ok).dump(2) << "\n";
        return ok ? kOk : kVerifyFail;
    });
}

// ----------------------------------------------------------- construct ----

struct ConstructOpts {
    std::string family;
    int k = 0;
    std::string N;
    std::string b, u, R1, a;
    std::string epsilon = "1";
    std::string p;
    std::string field = "Q";
    std::string out;
};

template <Field K>
int emit_certificate(const TorsionCertificate<K>& cert, const std::string& out_path) {
    Json j = certificate_to_json(cert);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write " + out_path);
        f << j.dump(2) << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    bool valid = verify_certificate(cert).valid;
    std::cout << "field=" << cert.field().name() << " k=" << cert.k
              << " N=" << cert.N.get_str() << " genus=" << cert.genus
              << " separable=" << (cert.checks.separable ? "yes" : "no")
              << " valid=" << (valid ? "yes" : "no");
    if (valid) std::cout << " order|" << cert.N.get_str();
    std::cout << "\n";
    return valid ? kOk : kVerifyFail;
}

int run_construct(const ConstructOpts& o) {
    if (o.family == "example1") {
        if (o.k == 0 || o.a.empty() || o.p.empty())
            throw Error("--family example1 needs --k, --a and --p");
        RationalField q;
        auto cert = family_example1(o.k, parse_poly(q, o.a), parse_integer(o.p));
        return emit_certificate(cert, o.out);
    }
    if (o.family == "example2") {
        if (o.p.empty()) throw Error("--family example2 needs --p");
        return emit_certificate(family_example2(parse_integer(o.p)), o.out);
    }
    if (!o.family.empty()) throw Error("unknown family '" + o.family + "'");

    if (o.k == 0 || o.N.empty() || o.b.empty() || o.u.empty() || o.R1.empty())
        throw Error("construct needs --k, --N, --b, --u, --R1 (or --family)");
    Integer N = parse_integer(o.N);
    if (N <= 1) throw Error("N > 1 required");
    return with_field(o.field, [&](auto fld) {
        using K = decltype(fld);
        TorsionCertificate<K> cert =
            construct(o.k, N, parse_poly(fld, o.b), parse_poly(fld, o.u),
                      parse_poly(fld, o.R1), fld.parse(o.epsilon));
        return emit_certificate(cert, o.out);
    });
}

// -------------------------------------------------------------- verify ----

struct VerifyOpts {
    std::string cert_file;
    bool identity = false;
    bool cantor = false;
    bool zeta = false;
    std::string primes, t0s;
    long bound = 2000000;
};

template <Field K>
int run_verify_typed(const TorsionCertificate<K>& cert, const VerifyOpts& o) {
    bool all_pass = true;
    Json out = Json::object();
    if (o.identity) {
        auto rep = verify_certificate(cert);
        out["identity"] = verification_report_to_json(rep);
        all_pass = all_pass && rep.valid;
    }
    if (o.cantor) {
        if (cert.k != 2) throw Error("--cantor requires a k = 2 certificate");
        auto rep = verify_order(cert);
        out["cantor"] = order_report_to_json(rep);
        all_pass = all_pass && rep.order_divides;
    }
    if (o.zeta) {
        std::vector<Integer> primes = parse_integer_list(o.primes);
        Json reports = Json::array();
        if constexpr (std::same_as<K, RationalField>) {
            auto scan = check_torsion_divisibility(cert, primes, Integer(o.bound));
            for (const auto& r : scan.reports) reports.push_back(zeta_report_to_json(r));
            for (const auto& [p, why] : scan.skipped)
                reports.push_back(Json{{"p", p.get_str()}, {"skipped", why}});
            all_pass = all_pass && scan.all_divisible();
        } else if constexpr (std::same_as<K, RationalFunctionField>) {
            auto scan = check_torsion_divisibility(cert, primes, parse_integer_list(o.t0s),
                                                   Integer(o.bound));
            for (const auto& r : scan.reports) reports.push_back(zeta_report_to_json(r));
            for (const auto& [p, why] : scan.skipped)
                reports.push_back(Json{{"p", p.get_str()}, {"skipped", why}});
            all_pass = all_pass && scan.all_divisible();
        } else {
            // certificate already lives over F_p: count on the curve itself
            SuperellipticCurve<PrimeField> c(cert.k, cert.F);
            GoodReductionChecklist cl{cert.field().characteristic(), std::nullopt};
            cl.p_coprime_k = cl.p_coprime_N = cl.coefficients_reduce = true;
            cl.degree_preserved = cl.separable_mod_p = true;
            ReducedCurve rc{c, cl};
            auto rep = zeta_report(rc, cert.N, Integer(o.bound));
            reports.push_back(zeta_report_to_json(rep));
            all_pass = all_pass && rep.divisible_by_N;
        }
        out["zeta"] = std::move(reports);
    }
    std::cout << out.dump(2) << "\n";
    return all_pass ? kOk : kVerifyFail;
}

int run_verify(VerifyOpts o) {
    if (!o.identity && !o.cantor && !o.zeta) o.identity = true;
    if (o.zeta && o.primes.empty()) throw Error("--zeta needs --primes p1,p2,...");
    std::ifstream f(o.cert_file);
    if (!f) throw Error("cannot open certificate file " + o.cert_file);
    Json j = Json::parse(f);
    CertificateAny cert = certificate_from_json(j);
    return std::visit([&](const auto& c) { return run_verify_typed(c, o); }, cert);
}

// ---------------------------------------------------------------- scan ----

struct ScanOpts {
    std::string family = "example2";
    long pmin = 51;
    long pmax = 509;
    std::string store;
    unsigned jobs = 1;
};

int run_scan(const ScanOpts& o) {
    if (o.family != "example2") throw Error("scan supports --family example2");
    if (o.jobs < 1) throw Error("--jobs must be >= 1");
    std::vector<Integer> primes;
    for (Integer p(o.pmin); p <= o.pmax; ++p)
        if (is_prime(p)) primes.push_back(p);

    struct Row {
        Integer p;
        long genus = 0;
        bool separable = false, valid = false;
        Json cert_json;
    };
    std::vector<Row> rows(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            auto cert = family_example2(primes[i]);
            rows[i] = Row{primes[i], cert.genus, cert.checks.separable,
                          verify_certificate(cert).valid, certificate_to_json(cert)};
        }
    };
    if (o.jobs == 1 || primes.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < o.jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::size_t valid = 0;
    std::optional<CurveStore> store;
    if (!o.store.empty()) store.emplace(o.store);
    const std::string stamp = store_timestamp();
    for (const auto& r : rows) {
        std::cout << "p=" << r.p.get_str() << " genus=" << r.genus
                  << " separable=" << (r.separable ? "yes" : "no")
                  << " valid=" << (r.valid ? "yes" : "no") << "\n";
        if (r.valid) ++valid;
        if (store)
            store->append(r.cert_json, o.family, r.valid ? "valid" : "invalid", stamp);
    }
    std::cout << "scanned " << rows.size() << " primes in [" << o.pmin << ", " << o.pmax
              << "]: " << valid << " valid, " << (rows.size() - valid) << " invalid\n";
    return valid == rows.size() ? kOk : kVerifyFail;
}

// ----------------------------------------------------------- reproduce ----

bool report_line(const std::string& what, bool ok) {
    std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << what << "\n";
    return ok;
}

int run_reproduce(const std::string& name) {
    bool all = true;
    if (name == "example1") {
        std::cout << "family with b = 1: F = a^k - x^p, order p on a genus"
                     " (k-1)(p-1)/2 jacobian\n";
        RationalField q;
        struct Inst {
            int k;
            const char* a;
            long p;
            long genus;
        } insts[] = {{2, "x+1", 5, 2}, {2, "x+1", 7, 3}, {3, "x+2", 7, 6}};
        for (const auto& t : insts) {
            auto cert = family_example1(t.k, parse_poly(q, t.a), Integer(t.p));
            std::cout << "k=" << t.k << " a=" << t.a << " p=" << t.p
                      << ": F = " << format_poly(cert.F) << "\n";
            all &= report_line("norm identity a^k - F = x^p", cert.checks.identity);
            all &= report_line("F separable", cert.checks.separable);
            all &= report_line("genus expected " + std::to_string(t.genus) + ", computed " +
                                   std::to_string(cert.genus),
                               cert.genus == t.genus);
            if (t.k == 2) {
                auto rep = verify_order(cert);
                all &= report_line("Cantor order exactly " + std::to_string(t.p),
                                   rep.order_exact && *rep.order_exact == t.p);
            } else {
                all &= report_line("certificate valid (order | p asserted)",
                                   verify_certificate(cert).valid);
            }
        }
    } else if (name == "example2") {
        std::cout << "k = 3 family over the sextic b: genus p - 19, order p (p = 53 here)\n";
        auto cert = family_example2(Integer(53));
        static const char* kNineR3 =
            "x^17-2*x^16+9*x^15-18*x^14+36*x^13-73*x^12+90*x^11-172*x^10+162*x^9"
            "-255*x^8+212*x^7-248*x^6+185*x^5-161*x^4+93*x^3-53*x^2+22*x+1";
        std::cout << "9*R3 = " << format_poly(cert.Rk.mul_scalar(Rational(9))) << "\n";
        all &= report_line("9*R3 matches the degree-17 fixture",
                           format_poly(cert.Rk.mul_scalar(Rational(9))) == kNineR3);
        all &= report_line("genus expected 34, computed " + std::to_string(cert.genus),
                           cert.genus == 34);
        all &= report_line("certificate valid", verify_certificate(cert).valid);
    } else if (name == "example3") {
        std::cout << "genus-two curve over Q(t) with a rational 13-division point\n";
        auto seed = seed_example3();
        const auto& qt = seed.field;
        std::cout << "F = " << format_poly(seed.F) << "\n";
        auto cert = construct(2, seed.N, seed.b, seed.u, seed.R1,
                              qt.from_integer(Integer(2)));
        all &= report_line("pipeline with epsilon = 2 reproduces the printed F",
                           cert.F == seed.F);
        all &= report_line("certificate valid", verify_certificate(cert).valid);
        auto rep = verify_order(cert);
        all &= report_line("Cantor order exactly 13",
                           rep.order_exact && *rep.order_exact == 13);
        auto scan = check_torsion_divisibility(cert, {Integer(11), Integer(11), Integer(23)},
                                               {Integer(2), Integer(3), Integer(5)});
        all &= report_line("13 | #Jac at (p, t0) in {(11,2), (11,3), (23,5)}",
                           scan.reports.size() == 3 && scan.all_divisible());
    } else {
        throw Error("unknown example '" + name + "' (use example1|example2|example3)");
    }
    return all ? kOk : kVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsion-forge: superelliptic curves with prescribed jacobian torsion"};
    app.require_subcommand(1);

    LiftOpts lo;
    auto* lift_cmd = app.add_subcommand("lift", "Hensel-lift a polynomial k-th root");
    lift_cmd->add_option("--k", lo.k, "root exponent k >= 2")->required();
    lift_cmd->add_option("--b", lo.b, "modulus polynomial b")->required();
    lift_cmd->add_option("--u", lo.u, "target polynomial u")->required();
    lift_cmd->add_option("--R1", lo.R1, "level-1 root R1")->required();
    lift_cmd->add_option("--level", lo.level, "target level l >= 1")->required();
    lift_cmd->add_option("--field", lo.field, "coefficient field: Q, Qt or Fp:<p>")
        ->required();
    lift_cmd->add_flag("--explain", lo.explain, "include per-step lambda1/lambda2 trace");

    ConstructOpts co;
    auto* con_cmd = app.add_subcommand("construct", "build a torsion certificate");
    con_cmd->add_option("--family", co.family, "example1 or example2");
    con_cmd->add_option("--k", co.k, "exponent k");
    con_cmd->add_option("--N", co.N, "torsion order N");
    con_cmd->add_option("--b", co.b, "modulus polynomial b");
    con_cmd->add_option("--u", co.u, "norm target u");
    con_cmd->add_option("--R1", co.R1, "k-th root of u mod b");
    con_cmd->add_option("--a", co.a, "polynomial a (family example1)");
    con_cmd->add_option("--p", co.p, "prime p (families)");
    con_cmd->add_option("--epsilon", co.epsilon, "unit epsilon (default 1)");
    con_cmd->add_option("--field", co.field, "coefficient field (default Q)");
    con_cmd->add_option("--out", co.out, "write certificate JSON to this file");

    VerifyOpts vo;
    auto* ver_cmd = app.add_subcommand("verify", "verify a certificate file");
    ver_cmd->add_option("cert", vo.cert_file, "certificate JSON file")->required();
    ver_cmd->add_flag("--identity", vo.identity, "recompute all certificate flags");
    ver_cmd->add_flag("--cantor", vo.cantor, "certify the exact order (k = 2)");
    ver_cmd->add_flag("--zeta", vo.zeta, "check N | #Jac(F_p) at the given primes");
    ver_cmd->add_option("--primes", vo.primes, "comma-separated reduction primes");
    ver_cmd->add_option("--t0", vo.t0s, "comma-separated t values (Q(t) certificates)");
    ver_cmd->add_option("--bound", vo.bound, "enumeration bound for point counting");

    ScanOpts so;
    auto* scan_cmd = app.add_subcommand("scan", "scan a certificate family over primes");
    scan_cmd->add_option("--family", so.family, "family to scan (example2)");
    scan_cmd->add_option("--pmin", so.pmin, "lower bound (default 51)");
    scan_cmd->add_option("--pmax", so.pmax, "upper bound (default 509)");
    scan_cmd->add_option("--store", so.store, "append certificates to this JSONL store");
    scan_cmd->add_option("--jobs", so.jobs, "worker threads (default 1)");

    std::string repro_name;
    auto* rep_cmd = app.add_subcommand("reproduce", "re-derive one of the worked examples");
    rep_cmd->add_option("name", repro_name, "example1 | example2 | example3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }

    try {
        if (app.got_subcommand(lift_cmd)) return run_lift(lo);
        if (app.got_subcommand(con_cmd)) return run_construct(co);
        if (app.got_subcommand(ver_cmd)) return run_verify(vo);
        if (app.got_subcommand(scan_cmd)) return run_scan(so);
        if (app.got_subcommand(rep_cmd)) return run_reproduce(repro_name);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
