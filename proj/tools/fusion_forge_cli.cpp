#include "fusion_forge/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

using namespace fusion_forge;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    int n = 3;
    int level = 1;
    std::optional<int> k;
    std::optional<cd> kappa;
    std::map<std::string, double> tol;
    std::string out;
    std::string format = "json";
};

// Header plus rows; CSV and text views of a command's result.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json doc;
    Table table;
    bool pass = true;
};

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

std::string num(cd z) {
    std::ostringstream s;
    s << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return s.str();
}

std::string weight_str(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.c.size(); ++i) s += (i ? " " : "") + std::to_string(w.c[i]);
    return s;
}

// "RE", "RE+IMi", "RE-IMi", "IMi"
cd parse_kappa(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) throw UsageError("empty --kappa");
    try {
        if (s.back() != 'i') return {std::stod(s), 0.0};
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < s.size(); ++i)
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
        const auto im = [](const std::string& t) {
            if (t == "+" || t.empty()) return 1.0;
            if (t == "-") return -1.0;
            return std::stod(t);
        };
        if (split == std::string::npos) return {0.0, im(s)};
        return {std::stod(s.substr(0, split)), im(s.substr(split))};
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse --kappa '" + text + "'; expected RE[+IMi]");
    }
}

Weight parse_generator(const std::string& g, int n) {
    if (g == "box") return Weight::theta(n, 1);
    if (g == "spin+") return Weight::spin_plus(n);
    if (g == "spin-") return Weight::spin_minus(n);
    if (g == "0") return Weight::zero(n);
    std::string s = g;
    std::replace(s.begin(), s.end(), ',', ' ');
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == '[' || ch == ']'; }), s.end());
    std::istringstream in(s);
    std::vector<int> c;
    int x;
    while (in >> x) c.push_back(x);
    if (!in.eof() || static_cast<int>(c.size()) != n)
        throw UsageError("--gen expects box, spin+, spin-, 0 or " + std::to_string(n) + " doubled coordinates");
    return Weight(c);
}

// Defaults per command; --tol may only override these names.
std::map<std::string, double> default_tolerances(const std::string& cmd) {
    if (cmd == "fuse") return {{"pf_eigen", 1e-9}, {"pf_power", 1e-6}, {"integrality", 1e-6}};
    if (cmd == "braid") return {{"algebra", 1e-12}};
    if (cmd == "kz-verify") return {{"residual", 1e-5}, {"lambda_min", 1e-6}, {"spread", 1e-3}};
    if (cmd == "df") return {{"residual", 1e-5}};
    return {};
}

std::map<std::string, double> merge_tolerances(const std::string& cmd, const std::vector<std::string>& given) {
    auto tol = default_tolerances(cmd);
    for (const std::string& t : given) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects NAME=VAL, got '" + t + "'");
        const std::string name = t.substr(0, eq);
        if (!tol.count(name)) {
            std::string known;
            for (const auto& [k, v] : tol) known += (known.empty() ? "" : ", ") + k;
            throw UsageError("unknown tolerance '" + name + "' for " + cmd + (known.empty() ? "" : " (known: " + known + ")"));
        }
        double v = 0.0;
        try {
            v = std::stod(t.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw UsageError("bad tolerance value in '" + t + "'");
        }
        if (!(v > 0.0)) throw UsageError("tolerance " + name + " must be positive");
        tol[name] = v;
    }
    return tol;
}

unsigned thread_budget(std::size_t jobs) {
    unsigned t = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FUSION_FORGE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) t = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// Runs f(i) for i < jobs; results land in slot i, so ordering never depends on scheduling.
template <class T>
std::vector<T> parallel_rows(std::size_t jobs, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned nt = thread_budget(jobs);
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < jobs;) out[i] = f(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

Output cmd_alcove(const RunConfig& cfg) {
    Output o;
    const auto rows = alcove_rows(cfg.n, cfg.level);
    json js = json::array();
    for (const AlcoveRow& r : rows) js.push_back(to_json(r));
    o.doc = {{"n", cfg.n}, {"level", cfg.level}, {"kappa", kappa_of(cfg.n, cfg.level)}, {"rows", js}};
    o.table.header = {"weight2", "single_valued", "casimir", "conformal_weight", "qdim"};
    for (const AlcoveRow& r : rows)
        o.table.rows.push_back({weight_str(r.weight), r.single_valued ? "1" : "0", rational_str(r.casimir),
                                rational_str(r.conformal_weight), num(r.qdim)});
    return o;
}

Output cmd_fuse(const RunConfig& cfg, bool ring, const std::string& gen) {
    Output o;
    if (ring) {
        const RingReport r = ring_report(cfg.n);
        o.doc = to_json(r);
        o.table.header = {"x"};
        for (const auto& l : r.labels) o.table.header.push_back(l);
        for (std::size_t i = 0; i < r.table.size(); ++i) {
            std::vector<std::string> row{r.labels[i]};
            for (int v : r.table[i]) row.push_back(r.labels[static_cast<std::size_t>(v)]);
            o.table.rows.push_back(row);
        }
        return o;
    }
    const Weight g = parse_generator(gen, cfg.n);
    const AlcoveIndex alc = alcove(cfg.n, cfg.level);
    if (!alc.contains(g)) throw UsageError("generator " + g.str() + " is not in the level " + std::to_string(cfg.level) + " alcove");

    FusionReport rep;
    double rounding = 0.0;
    if (g.is_zero() || is_minimal(g)) {
        rep = fusion_report(g, cfg.n, cfg.level);
    } else {
        // general generator: diagonalised products, which refuse non-integral entries
        const VerlindeTable T(alc);
        rep.n = cfg.n;
        rep.level = cfg.level;
        rep.generator = g;
        rep.alcove = alc.weights();
        rep.matrix.assign(alc.size(), std::vector<std::int64_t>(alc.size(), 0));
        for (std::size_t m = 0; m < alc.size(); ++m) {
            const auto col = T.product(g, alc[m]);
            for (std::size_t v = 0; v < alc.size(); ++v) rep.matrix[v][m] = col[v];
        }
        rounding = T.max_rounding_error();
        o.pass = rounding < cfg.tol.at("integrality");
    }
    o.doc = to_json(rep);
    o.doc["derived_by"] = (g.is_zero() || is_minimal(g)) ? "minimal_rule" : "diagonalization";
    if (rounding > 0.0) o.doc["max_rounding_error"] = rounding;
    if (g == Weight::theta(cfg.n, 1)) {
        const PerronFrobeniusReport pf = perron_frobenius_check(cfg.n, cfg.level);
        o.doc["perron_frobenius"] = to_json(pf);
        o.pass = o.pass && pf.strongly_connected && pf.positive && pf.eigen_residual < cfg.tol.at("pf_eigen") &&
                 std::abs(pf.power_eigenvalue - pf.d_box) < cfg.tol.at("pf_power");
    }
    o.table.header = {"nu \\ mu"};
    for (const Weight& w : rep.alcove) o.table.header.push_back(weight_str(w));
    for (std::size_t v = 0; v < rep.alcove.size(); ++v) {
        std::vector<std::string> row{weight_str(rep.alcove[v])};
        for (auto e : rep.matrix[v]) row.push_back(std::to_string(e));
        o.table.rows.push_back(row);
    }
    return o;
}

Output cmd_braid(const RunConfig& cfg) {
    Output o;
    const BraidReport b = braid_report(cfg.n, cfg.level);
    o.doc = to_json(b);
    o.doc["braid_residual"] = b.residuals.braid;
    o.doc["jones_residual"] = b.residuals.jones;
    const WenzlResiduals& r = b.residuals;
    const double worst = std::max({r.braid, r.cubic, r.jones, r.c_identity, r.idempotent, r.spectral, r.quadratic});
    o.pass = worst < cfg.tol.at("algebra") && std::abs(b.qdim_jones - b.qdim_closed) < 1e-10;
    o.table.header = {"quantity", "value"};
    o.table.rows = {{"q", num(b.q)},
                    {"r", num(b.r)},
                    {"z", num(b.z)},
                    {"tau", num(b.tau)},
                    {"braid_residual", num(r.braid)},
                    {"cubic_residual", num(r.cubic)},
                    {"jones_residual", num(r.jones)},
                    {"qdim_jones", num(b.qdim_jones)},
                    {"qdim_closed", num(b.qdim_closed)}};
    return o;
}

Output cmd_kzverify(const RunConfig& cfg) {
    Output o;
    std::vector<int> ks;
    if (cfg.k) {
        ks.push_back(*cfg.k);
    } else if (cfg.kappa) {
        ks.push_back(1);
    } else {
        for (int k = 1; k <= std::max(1, cfg.level - 1); ++k) ks.push_back(k);
    }
    struct Row {
        json j;
        bool pass = false;
        std::vector<std::string> cells;
    };
    const double rtol = cfg.tol.at("residual"), lmin = cfg.tol.at("lambda_min"), smax = cfg.tol.at("spread");
    const auto rows = parallel_rows<Row>(ks.size(), [&](std::size_t i) {
        Row row;
        const int k = ks[i];
        try {
            const ConnectionResult c = cfg.kappa ? connect(cfg.n, k, *cfg.kappa) : connect_level(cfg.n, k, cfg.level);
            row.j = to_json(c);
            const bool nonzero = c.min_abs_lambda() > lmin;
            row.pass = c.max_ratio_residual() < rtol && c.max_residual() < rtol && nonzero && (!c.resonant || c.spread < smax);
            row.j["nonzero"] = nonzero;
            row.j["pass"] = row.pass;
            row.cells = {std::to_string(k), num(c.kappa), num(c.max_residual()), num(c.max_ratio_residual()),
                         num(c.min_abs_lambda()), c.resonant ? num(c.spread) : "-", row.pass ? "PASS" : "FAIL"};
        } catch (const std::exception& e) {
            row.j = {{"n", cfg.n}, {"k", k}, {"error", e.what()}, {"pass", false}};
            row.cells = {std::to_string(k), "-", "-", "-", "-", "-", std::string("ERROR: ") + e.what()};
        }
        return row;
    });
    json js = json::array();
    for (const Row& r : rows) {
        js.push_back(r.j);
        o.table.rows.push_back(r.cells);
        o.pass = o.pass && r.pass;
    }
    o.doc = {{"n", cfg.n}, {"rows", js}};
    if (!cfg.kappa) o.doc["level"] = cfg.level;
    o.table.header = {"k", "kappa", "max_residual", "max_ratio_residual", "min_abs_lambda", "spread", "status"};
    return o;
}

Output cmd_df(const RunConfig& cfg) {
    Output o;
    const int k = cfg.k.value_or(1);
    const cd kappa = cfg.kappa.value_or(cd(kappa_of(cfg.n, cfg.level), 0.0));
    const DFReport d = df_report(cfg.n, k, kappa);
    o.doc = to_json(d);
    o.doc["n"] = cfg.n;
    o.doc["k"] = k;
    o.doc["kappa"] = to_json(kappa);
    o.doc["kappa_range"] = kappa_range(cfg.n, k, kappa);
    o.pass = d.resid < cfg.tol.at("residual");
    o.table.header = {"j", "odetransport", "connection_times_rho"};
    const RhoCoefficients rho = rho_coefficients(d.params);
    const std::array<cd, 3> ri{rho.ri1, rho.ri2, rho.ri3};
    for (int j = 0; j < 3; ++j) o.table.rows.push_back({std::to_string(j + 1), num(d.odetransport[j]), num(ri[j] * d.connection[j])});
    return o;
}

void write_csv(std::ostream& out, const Table& t) {
    auto cell = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
        out << "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

void write_text(std::ostream& out, const Table& t, const std::string& title) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto grow = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    grow(t.header);
    for (const auto& r : t.rows) grow(r);
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << r[i];
        out << "\n";
    };
    out << title << "\n";
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fusion rules, braiding and KZ connection checks for Spin(2n) at level l"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> tol_args;
    std::string kappa_text;
    std::string gen = "box";
    bool ring = false;
    int k_arg = 0;

    auto common = [&](CLI::App* sub, bool needs_level) {
        sub->add_option("--n", cfg.n, "rank n of Spin(2n), n >= 3")->check(CLI::Range(3, 12))->capture_default_str();
        auto* lv = sub->add_option("--level", cfg.level, "level l >= 1")->check(CLI::Range(1, 64))->capture_default_str();
        if (needs_level) lv->required();
        sub->add_option("--tol", tol_args, "tolerance override NAME=VAL (repeatable)");
        sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };

    auto* alc = app.add_subcommand("alcove", "alcove listing with parities, Casimirs, conformal weights and quantum dimensions");
    common(alc, true);
    auto* fuse = app.add_subcommand("fuse", "fusion matrix of a generator, or the level-one ring");
    common(fuse, false);
    fuse->add_option("--gen", gen, "box, spin+, spin-, 0 or doubled coordinates such as 4,0,0")->capture_default_str();
    fuse->add_flag("--ring", ring, "level-one ring table on {0, v, s+, s-}");
    auto* braid = app.add_subcommand("braid", "braiding eigenvalues, Wenzl representation and residuals");
    common(braid, true);
    auto* kz = app.add_subcommand("kz-verify", "transported KZ connection coefficients against the closed form");
    common(kz, false);
    kz->add_option("--k", k_arg, "symmetric power index k >= 1")->check(CLI::PositiveNumber);
    kz->add_option("--kappa", kappa_text, "complex kappa RE[+IMi]; overrides level");
    auto* df = app.add_subcommand("df", "scalar equation transport against the connection identity");
    common(df, false);
    df->add_option("--k", k_arg, "symmetric power index k >= 1")->check(CLI::PositiveNumber);
    df->add_option("--kappa", kappa_text, "complex kappa RE[+IMi]; overrides level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.tol = merge_tolerances(cfg.command, tol_args);
        if (k_arg > 0) cfg.k = k_arg;
        if (!kappa_text.empty()) cfg.kappa = parse_kappa(kappa_text);

        Output o;
        if (cfg.command == "alcove") o = cmd_alcove(cfg);
        else if (cfg.command == "fuse") o = cmd_fuse(cfg, ring, gen);
        else if (cfg.command == "braid") o = cmd_braid(cfg);
        else if (cfg.command == "kz-verify") o = cmd_kzverify(cfg);
        else o = cmd_df(cfg);

        o.doc["command"] = cfg.command;
        o.doc["tolerances"] = cfg.tol;
        o.doc["pass"] = o.pass;

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw std::runtime_error("cannot open " + cfg.out);
        }
        std::ostream& out = cfg.out.empty() ? std::cout : file;
        if (cfg.format == "json") out << o.doc.dump(2) << "\n";
        else if (cfg.format == "csv") write_csv(out, o.table);
        else write_text(out, o.table, cfg.command + " n=" + std::to_string(cfg.n) + (o.pass ? "  [PASS]" : "  [FAIL]"));
        return o.pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
