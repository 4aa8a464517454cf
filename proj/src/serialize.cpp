#include "fusion_forge/serialize.hpp"

#include <algorithm>
#include <stdexcept>

namespace fusion_forge {

namespace {

template <std::size_t N>
json complex_array(const std::array<cd, N>& v) {
    json out = json::array();
    for (const cd& x : v) out.push_back(to_json(x));
    return out;
}

template <std::size_t N>
std::array<cd, N> complex_array_from(const json& j) {
    if (!j.is_array() || j.size() != N) throw std::invalid_argument("expected an array of " + std::to_string(N) + " complex numbers");
    std::array<cd, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = complex_from_json(j[i]);
    return out;
}

const char* ring_label(int i) {
    static const char* names[] = {"0", "v", "s+", "s-"};
    return names[i];
}

}  // namespace

std::vector<AlcoveRow> alcove_rows(int n, int level) {
    const AlcoveIndex alc = alcove(n, level);
    std::vector<AlcoveRow> rows;
    for (const Weight& w : alc.weights())
        rows.push_back({w, w.single_valued(), casimir(w), conformal_weight(w, level), quantum_dim(w, n, level)});
    return rows;
}

FusionReport fusion_report(const Weight& generator, int n, int level) {
    const AlcoveIndex alc = alcove(n, level);
    FusionReport r;
    r.n = n;
    r.level = level;
    r.generator = generator;
    r.alcove = alc.weights();
    if (generator.is_zero()) {
        r.matrix.assign(alc.size(), std::vector<std::int64_t>(alc.size(), 0));
        for (std::size_t i = 0; i < alc.size(); ++i) r.matrix[i][i] = 1;
    } else {
        r.matrix = fusion_matrix(generator, alc).N;
    }
    return r;
}

RingReport ring_report(int n) {
    const LevelOneRing ring = level1_ring(n);
    RingReport r;
    r.n = n;
    for (int i = 0; i < 4; ++i) r.labels.push_back(ring_label(i));
    r.table = ring.product;
    r.group = ring.cyclic ? "Z4" : "Z2xZ2";
    return r;
}

BraidReport braid_report(int n, int level) {
    const BraidParams p = BraidParams::make(n, level);
    const WenzlRep w = wenzl_rep(p);
    BraidReport r;
    r.n = n;
    r.level = level;
    r.q = p.q;
    r.r = p.r;
    r.z = w.z;
    r.tau = w.tau;
    r.eigenvalues = braiding_eigenvalues(p);
    r.epsilon = {epsilon_j(p, BoxChannel::sym), epsilon_j(p, BoxChannel::alt), epsilon_j(p, BoxChannel::trivial)};
    r.residuals = wenzl_residuals(p, w);
    r.qdim_jones = qdim_from_jones(p);
    r.qdim_closed = box_qdim_closed(n, level);
    return r;
}

DFReport df_report(int n, int k, cd kappa) {
    DFReport r;
    r.params = fitting(n, k, kappa);
    r.rhos = rho_coefficients(r.params).all();
    r.connection = connection_identity(r.params);
    const DFTransport t = df_transport(r.params);
    r.odetransport = t.odetransport;
    r.resid = std::max({t.rel_residual[0], t.rel_residual[1], t.rel_residual[2]});
    r.rho_variant = to_string(RhoInf2::transport);
    r.condition = t.condition;
    return r;
}

std::string rational_str(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

json to_json(cd v) { return json::array({v.real(), v.imag()}); }

cd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex numbers are [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Weight& w) { return w.c; }
Weight weight_from_json(const json& j) { return Weight(j.get<std::vector<int>>()); }

json to_json(const AlcoveRow& r) {
    return {{"weight2", to_json(r.weight)},
            {"single_valued", r.single_valued},
            {"casimir", rational_str(r.casimir)},
            {"conformal_weight", rational_str(r.conformal_weight)},
            {"qdim", r.qdim}};
}

AlcoveRow alcove_row_from_json(const json& j) {
    return {weight_from_json(j.at("weight2")), j.at("single_valued").get<bool>(),
            parse_rational(j.at("casimir").get<std::string>()),
            parse_rational(j.at("conformal_weight").get<std::string>()), j.at("qdim").get<double>()};
}

json to_json(const FusionReport& r) {
    json alc = json::array();
    for (const Weight& w : r.alcove) alc.push_back(to_json(w));
    return {{"n", r.n}, {"level", r.level}, {"generator", to_json(r.generator)}, {"alcove", alc}, {"matrix", r.matrix}};
}

FusionReport fusion_report_from_json(const json& j) {
    FusionReport r;
    r.n = j.at("n").get<int>();
    r.level = j.at("level").get<int>();
    r.generator = weight_from_json(j.at("generator"));
    for (const json& w : j.at("alcove")) r.alcove.push_back(weight_from_json(w));
    r.matrix = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
    return r;
}

json to_json(const RingReport& r) {
    return {{"n", r.n}, {"labels", r.labels}, {"table", r.table}, {"group", r.group}};
}

RingReport ring_report_from_json(const json& j) {
    RingReport r;
    r.n = j.at("n").get<int>();
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.table = j.at("table").get<std::vector<std::vector<int>>>();
    r.group = j.at("group").get<std::string>();
    return r;
}

json to_json(const PerronFrobeniusReport& r) {
    return {{"n", r.n},
            {"level", r.level},
            {"block_size", r.block_size},
            {"strongly_connected", r.strongly_connected},
            {"positive", r.positive},
            {"eigen_residual", r.eigen_residual},
            {"power_eigenvalue", r.power_eigenvalue},
            {"d_box", r.d_box}};
}

json to_json(const BraidReport& r) {
    const WenzlResiduals& w = r.residuals;
    return {{"n", r.n},
            {"level", r.level},
            {"q", to_json(r.q)},
            {"r", to_json(r.r)},
            {"z", to_json(r.z)},
            {"tau", to_json(r.tau)},
            {"eigenvalues", complex_array(r.eigenvalues)},
            {"epsilon", complex_array(r.epsilon)},
            {"residuals",
             {{"braid", w.braid},
              {"cubic", w.cubic},
              {"jones", w.jones},
              {"c_identity", w.c_identity},
              {"idempotent", w.idempotent},
              {"spectral", w.spectral},
              {"quadratic", w.quadratic}}},
            {"qdim_jones", r.qdim_jones},
            {"qdim_closed", r.qdim_closed}};
}

BraidReport braid_report_from_json(const json& j) {
    BraidReport r;
    r.n = j.at("n").get<int>();
    r.level = j.at("level").get<int>();
    r.q = complex_from_json(j.at("q"));
    r.r = complex_from_json(j.at("r"));
    r.z = complex_from_json(j.at("z"));
    r.tau = complex_from_json(j.at("tau"));
    r.eigenvalues = complex_array_from<3>(j.at("eigenvalues"));
    r.epsilon = complex_array_from<3>(j.at("epsilon"));
    const json& w = j.at("residuals");
    r.residuals = {w.at("braid").get<double>(),      w.at("cubic").get<double>(),    w.at("jones").get<double>(),
                   w.at("c_identity").get<double>(), w.at("idempotent").get<double>(), w.at("spectral").get<double>(),
                   w.at("quadratic").get<double>()};
    r.qdim_jones = j.at("qdim_jones").get<double>();
    r.qdim_closed = j.at("qdim_closed").get<double>();
    return r;
}

json to_json(const ConnectionResult& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"level", r.level},
            {"kappa", to_json(r.kappa)},
            {"lambdas", complex_array(r.lambdas)},
            {"closed_form", complex_array(r.closed_form)},
            {"rel_residual", r.rel_residual},
            {"ratio_residual", r.ratio_residual},
            {"admissible", r.admissible},
            {"resonant", r.resonant},
            {"spread", r.spread},
            {"condition", r.meta.condition},
            {"path",
             {{"delta", r.meta.delta},
              {"delta_prime", r.meta.delta_prime},
              {"order", r.meta.order},
              {"rtol", r.meta.rtol},
              {"atol", r.meta.atol},
              {"steps", r.meta.steps},
              {"ill_conditioned", r.meta.ill_conditioned}}}};
}

ConnectionResult connection_from_json(const json& j) {
    ConnectionResult r;
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.level = j.at("level").get<int>();
    r.kappa = complex_from_json(j.at("kappa"));
    r.lambdas = complex_array_from<3>(j.at("lambdas"));
    r.closed_form = complex_array_from<3>(j.at("closed_form"));
    r.rel_residual = j.at("rel_residual").get<std::array<double, 3>>();
    r.ratio_residual = j.at("ratio_residual").get<std::array<double, 3>>();
    r.admissible = j.at("admissible").get<std::array<bool, 3>>();
    r.resonant = j.at("resonant").get<bool>();
    r.spread = j.at("spread").get<double>();
    r.meta.condition = j.at("condition").get<double>();
    const json& p = j.at("path");
    r.meta.delta = p.at("delta").get<double>();
    r.meta.delta_prime = p.at("delta_prime").get<double>();
    r.meta.order = p.at("order").get<int>();
    r.meta.rtol = p.at("rtol").get<double>();
    r.meta.atol = p.at("atol").get<double>();
    r.meta.steps = p.at("steps").get<std::size_t>();
    r.meta.ill_conditioned = p.at("ill_conditioned").get<bool>();
    return r;
}

json to_json(const DFReport& r) {
    return {{"params",
             {{"a", to_json(r.params.a)}, {"b", to_json(r.params.b)}, {"c", to_json(r.params.c)}, {"g", to_json(r.params.g)}}},
            {"rhos", complex_array(r.rhos)},
            {"connection", complex_array(r.connection)},
            {"odetransport", complex_array(r.odetransport)},
            {"resid", r.resid},
            {"rho_inf2_variant", r.rho_variant},
            {"condition", r.condition}};
}

DFReport df_report_from_json(const json& j) {
    DFReport r;
    const json& p = j.at("params");
    r.params = {complex_from_json(p.at("a")), complex_from_json(p.at("b")), complex_from_json(p.at("c")),
                complex_from_json(p.at("g"))};
    r.rhos = complex_array_from<6>(j.at("rhos"));
    r.connection = complex_array_from<3>(j.at("connection"));
    r.odetransport = complex_array_from<3>(j.at("odetransport"));
    r.resid = j.at("resid").get<double>();
    r.rho_variant = j.at("rho_inf2_variant").get<std::string>();
    r.condition = j.at("condition").get<double>();
    return r;
}

}  // namespace fusion_forge
