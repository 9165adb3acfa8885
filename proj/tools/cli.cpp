#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "agum/errors.hpp"
#include "agum/halfhex.hpp"
#include "agum/kernel.hpp"
#include "agum/limits.hpp"
#include "agum/matrix_sampler.hpp"
#include "agum/rng.hpp"
#include "agum/verify.hpp"

namespace agum::cli {

namespace {

using Cell = std::variant<long long, double, std::string>;

// Column schema + rows; rendered as CSV (with # metadata) or as a JSON envelope.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::function<void(std::ostream&)> csv_body;  // replaces header + rows in CSV mode
};

struct Meta {
    std::string command;
    std::optional<std::uint64_t> seed;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cell_text(const Cell& c) {
    if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto* d = std::get_if<double>(&c)) return num(*d);
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Meta& m, const Table& t) {
    os << "# agum " << kVersion << '\n' << "# command: " << m.command << '\n';
    if (m.seed) os << "# seed: " << *m.seed << '\n' << "# rng: " << Rng::algorithm << '\n';
    if (t.csv_body) {
        t.csv_body(os);
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Meta& m, const Table& t) {
    nlohmann::ordered_json j;
    j["meta"]["version"] = kVersion;
    j["meta"]["command"] = m.command;
    if (m.seed) {
        j["meta"]["seed"] = *m.seed;
        j["meta"]["rng"] = Rng::algorithm;
    }
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& c : r) {
            if (auto* i = std::get_if<long long>(&c)) row.push_back(*i);
            else if (auto* d = std::get_if<double>(&c)) row.push_back(std::stod(num(*d)));  // 12 significant digits
            else row.push_back(std::get<std::string>(c));
        }
        j["rows"].push_back(row);
    }
    os << j.dump(2) << '\n';
}

unsigned worker_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("AGUM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min<unsigned>(n, cap);
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Replica r runs on rng.split(r); results are kept per replica and emitted in order.
template <class T>
std::vector<T> run_replicas(int reps, std::uint64_t seed, const std::function<T(Rng&)>& body) {
    std::vector<T> out(reps);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex fail_mutex;
    auto worker = [&] {
        for (int r; (r = next++) < reps;) {
            try {
                Rng rng = Rng(seed).split(static_cast<std::uint64_t>(r));
                out[r] = body(rng);
            } catch (...) {
                std::lock_guard lock(fail_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned w = worker_count(reps);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < w; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw DomainError("not an integer: '" + s + "'");
    return static_cast<int>(v);
}

std::string join_positions(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

Gauge parse_gauge(const std::string& g) { return g == "plain" ? Gauge::Plain : Gauge::Symmetric; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"agum: anti-symmetric GUE minor process and half-hexagon tilings"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // --format/--output/--seed may follow the subcommand
    std::string format = "csv", output;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", output, "write to a file instead of stdout");
    app.footer(
        "Exit codes: 0 success, 1 verification failed, 2 usage or domain error, 3 numeric error.\n"
        "AGUM_THREADS caps the worker threads used for --reps.");

    Table table;
    Meta meta;
    std::function<void()> action;

    // kernel eval / corr
    auto* kernel = app.add_subcommand("kernel", "finite-n correlation kernel");
    kernel->require_subcommand(1);
    int ks = 1, kt = 1;
    double kx = 0, ky = 0;
    std::string gauge = "plain";
    auto* keval = kernel->add_subcommand("eval", "K((s,x),(t,y)). Columns: s,x,t,y,gauge,K");
    keval->add_option("--s", ks)->required()->check(CLI::PositiveNumber);
    keval->add_option("--x", kx)->required();
    keval->add_option("--t", kt)->required()->check(CLI::PositiveNumber);
    keval->add_option("--y", ky)->required();
    keval->add_option("--gauge", gauge, "plain (default) or symmetric")->check(CLI::IsMember({"plain", "symmetric"}));
    keval->callback([&] {
        action = [&] {
            table.columns = {"s", "x", "t", "y", "gauge", "K"};
            table.rows.push_back({ks, kx, kt, ky, gauge, kernel_eval(ks, kx, kt, ky, parse_gauge(gauge))});
        };
    });
    std::string points;
    auto* kcorr = kernel->add_subcommand("corr", "r-point correlation det[K]. Columns: r,rho");
    kcorr->add_option("--points", points, "s1:x1,s2:x2,...")->required();
    kcorr->add_option("--gauge", gauge)->check(CLI::IsMember({"plain", "symmetric"}));
    kcorr->callback([&] {
        action = [&] {
            std::vector<LevelPoint> pts;
            for (const auto& p : split(points, ',')) {
                const auto sx = split(p, ':');
                if (sx.size() != 2) throw DomainError("point must be s:x, got '" + p + "'");
                pts.push_back({parse_int(sx[0]), parse_double(sx[1])});
            }
            table.columns = {"r", "rho"};
            table.rows.push_back({static_cast<long long>(pts.size()), corr_det(pts, parse_gauge(gauge))});
        };
    });

    // sample matrix|bordered
    auto* sample = app.add_subcommand("sample", "minor chains. Columns: rep,level,index,value (values decreasing)");
    std::string sampler;
    int sn = 2, reps = 1;
    sample->add_option("kind", sampler, "matrix or bordered")->required()->check(CLI::IsMember({"matrix", "bordered"}));
    sample->add_option("--n", sn)->required()->check(CLI::PositiveNumber);
    sample->add_option("--reps", reps)->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed);
    sample->callback([&] {
        action = [&] {
            meta.seed = seed;
            const bool matrix = sampler == "matrix";
            auto chains = run_replicas<MinorChain>(reps, seed, [&](Rng& r) {
                return matrix ? sample_minor_chain_matrix(sn, r) : sample_minor_chain_bordered(sn, r);
            });
            table.columns = {"rep", "level", "index", "value"};
            for (int r = 0; r < reps; ++r)
                for (int k = 1; k <= sn; ++k)
                    for (std::size_t i = 0; i < chains[r].level(k).size(); ++i)
                        table.rows.push_back({r, k, static_cast<long long>(i + 1), chains[r].level(k)[i]});
        };
    });

    // tile sample|measure|enumerate
    auto* tile = app.add_subcommand("tile", "half-hexagon path ensembles");
    tile->require_subcommand(1);
    int tp = 1, tN = 1, line = 0;
    std::string kind = "blue";
    auto* tsample = tile->add_subcommand(
        "sample",
        "uniform ensembles. CSV: per replica the export block `p,N,seed` / values / one line of heights per walker "
        "(seed = the replica's derived seed). JSON columns: rep,seed,walker,heights");
    tsample->add_option("--p", tp)->required()->check(CLI::PositiveNumber);
    tsample->add_option("--N", tN)->required()->check(CLI::PositiveNumber);
    tsample->add_option("--reps", reps)->check(CLI::PositiveNumber);
    tsample->add_option("--seed", seed);
    tsample->callback([&] {
        action = [&] {
            meta.seed = seed;
            auto ens = std::make_shared<std::vector<PathEnsemble>>(
                run_replicas<PathEnsemble>(reps, seed, [&](Rng& r) { return sample_ensemble(tp, tN, r); }));
            auto rseed = [s = seed](int r) { return Rng(s).split(static_cast<std::uint64_t>(r)).seed(); };
            table.columns = {"rep", "seed", "walker", "heights"};
            for (int r = 0; r < reps; ++r)
                for (int i = 0; i < tp; ++i)
                    table.rows.push_back({r, std::to_string(rseed(r)), i + 1, join_positions((*ens)[r].heights[i])});
            table.csv_body = [ens, rseed](std::ostream& os) {
                for (std::size_t r = 0; r < ens->size(); ++r) write_ensemble(os, (*ens)[r], rseed(static_cast<int>(r)));
            };
        };
    });
    auto* tmeasure = tile->add_subcommand("measure", "exact law of one line. Columns: positions,probability,exact");
    tmeasure->add_option("--p", tp)->required()->check(CLI::PositiveNumber);
    tmeasure->add_option("--N", tN)->required()->check(CLI::PositiveNumber);
    tmeasure->add_option("--line", line)->required()->check(CLI::NonNegativeNumber);
    tmeasure->add_option("--kind", kind, "red or blue (default)")->check(CLI::IsMember({"red", "blue"}));
    tmeasure->callback([&] {
        action = [&] {
            const auto law = line_law(tp, tN, line, kind == "red" ? ParticleKind::Red : ParticleKind::Blue);
            table.columns = {"positions", "probability", "exact"};
            for (std::size_t i = 0; i < law.configs.size(); ++i) {
                const auto pr = law.probability(i);
                table.rows.push_back({join_positions(law.configs[i]), static_cast<double>(pr), pr.str()});
            }
        };
    });
    auto* tenum = tile->add_subcommand("enumerate", "exhaustive count (p <= 3, N <= 4). Columns: p,N,count,formula");
    tenum->add_option("--p", tp)->required()->check(CLI::PositiveNumber);
    tenum->add_option("--N", tN)->required()->check(CLI::PositiveNumber);
    tenum->callback([&] {
        action = [&] {
            table.columns = {"p", "N", "count", "formula"};
            table.rows.push_back({tp, tN, static_cast<long long>(enumerate_all(tp, tN).size()), count_ensembles(tp, tN).str()});
        };
    });

    // limit airy|extairy|bead|hard
    auto* limit = app.add_subcommand("limit", "limit kernels. Columns: kind,tx,x,ty,y,K (tx,ty are s,t for hard)");
    std::string lk;
    double lx = 0, ly = 0, ltx = 0, lty = 0;
    limit->add_option("kind", lk, "airy, extairy, bead or hard")->required()->check(CLI::IsMember({"airy", "extairy", "bead", "hard"}));
    limit->add_option("--x", lx)->required();
    limit->add_option("--y", ly)->required();
    limit->add_option("--tx,--s", ltx, "time (or species label s for hard) of the first point");
    limit->add_option("--ty,--t", lty, "time (or species label t for hard) of the second point");
    limit->callback([&] {
        action = [&] {
            double v = 0;
            if (lk == "airy") v = airy_kernel(lx, ly);
            else if (lk == "extairy") v = ext_airy_kernel(ltx, lx, lty, ly);
            else if (lk == "bead") v = bead_kernel(ltx, lx, lty, ly);
            else v = hard_kernel(parse_int(num(ltx)), lx, parse_int(num(lty)), ly);
            table.columns = {"kind", "tx", "x", "ty", "y", "K"};
            table.rows.push_back({lk, ltx, lx, lty, ly, v});
        };
    });

    // converge soft|soft2|hard
    auto* conv = app.add_subcommand("converge", "finite-n scaled kernel vs its limit. Columns: n,value,limit,abs_error,rel_error");
    std::string regime, ns = "50,100,200", point = "0:0,0:0", centering = "midpoint", lgauge = "exact";
    conv->add_option("regime", regime, "soft, soft2 or hard")->required()->check(CLI::IsMember({"soft", "soft2", "hard"}));
    conv->add_option("--n", ns, "comma-separated sizes");
    conv->add_option("--point", point, "cj:Yj,cl:Yl");
    conv->add_option("--centering", centering, "midpoint (default) or literal")->check(CLI::IsMember({"midpoint", "literal"}));
    conv->add_option("--gauge", lgauge, "exact (default) or asymptotic")->check(CLI::IsMember({"exact", "asymptotic"}));
    conv->callback([&] {
        action = [&] {
            const auto pts = split(point, ',');
            if (pts.size() != 2) throw DomainError("--point needs two c:Y pairs");
            ScaledPoint ab[2];
            for (int i = 0; i < 2; ++i) {
                const auto cy = split(pts[i], ':');
                if (cy.size() != 2) throw DomainError("point must be c:Y, got '" + pts[i] + "'");
                ab[i] = {parse_double(cy[0]), parse_double(cy[1])};
            }
            std::vector<int> sizes;
            for (const auto& s : split(ns, ',')) sizes.push_back(parse_int(s));
            const Regime rg = regime == "soft" ? Regime::Soft : regime == "soft2" ? Regime::Soft2 : Regime::Hard;
            const ScalingOptions opt{centering == "literal" ? Centering::Literal : Centering::Midpoint,
                                     lgauge == "asymptotic" ? LimitGauge::Asymptotic : LimitGauge::Exact};
            table.columns = {"n", "value", "limit", "abs_error", "rel_error"};
            for (const auto& r : convergence(rg, sizes, ab[0], ab[1], opt))
                table.rows.push_back({r.n, r.value, r.limit, r.abs_error, r.rel_error});
        };
    });

    // verify all|<id>
    auto* verify = app.add_subcommand("verify", "acceptance suite; exit 0 iff every selected criterion passes");
    std::string target;
    verify->add_option("target", target, "all, or a criterion id 1..12")->required();
    std::uint64_t vseed = kDefaultVerifySeed;
    verify->add_option("--seed", vseed, "defaults to the acceptance seed");
    bool verify_failed = false;
    verify->callback([&] {
        action = [&] {
            std::vector<int> ids;
            if (target == "all")
                for (int i = 1; i <= kCriteriaCount; ++i) ids.push_back(i);
            else
                ids.push_back(parse_int(target));
            meta.seed = vseed;
            table.columns = {"id", "title", "passed", "seconds", "budget_seconds", "checks"};
            for (int id : ids) {
                const auto r = run_criterion(id, vseed);
                std::string checks;
                for (const auto& c : r.checks)
                    checks += (checks.empty() ? "" : " | ") + std::string(c.informational ? "info " : c.ok ? "ok " : "FAIL ") + c.what + ": " + c.detail;
                table.rows.push_back({id, r.title, std::string(r.passed() ? "PASS" : "FAIL"), r.seconds, r.budget_seconds, checks});
                verify_failed |= !r.passed();
            }
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    for (std::size_t i = 0; i < args.size(); ++i) meta.command += (i ? " " : "") + args[i];
    try {
        action();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            err << "error: cannot open " << output << '\n';
            return kUsage;
        }
    }
    std::ostream& os = output.empty() ? out : file;
    if (format == "json") write_json(os, meta, table);
    else write_csv(os, meta, table);
    return verify_failed ? kCheckFailed : kOk;
}

}  // namespace agum::cli
