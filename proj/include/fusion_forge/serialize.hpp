#pragma once

#include "fusion_forge/braid_algebra.hpp"
#include "fusion_forge/df_oracle.hpp"
#include "fusion_forge/kz_engine.hpp"
#include "fusion_forge/tensor_fusion.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace fusion_forge {

using json = nlohmann::json;

// Flattened reports emitted by the command-line front end.

struct AlcoveRow {
    Weight weight;
    bool single_valued = false;
    Rational casimir;
    Rational conformal_weight;
    double qdim = 0.0;
    bool operator==(const AlcoveRow&) const = default;
};

std::vector<AlcoveRow> alcove_rows(int n, int level);

struct FusionReport {
    int n = 0;
    int level = 0;
    Weight generator;
    std::vector<Weight> alcove;
    std::vector<std::vector<std::int64_t>> matrix;  // matrix[nu][mu]
    bool operator==(const FusionReport&) const = default;
};

FusionReport fusion_report(const Weight& generator, int n, int level);

struct RingReport {
    int n = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;
    std::string group;  // "Z4" or "Z2xZ2"
    bool operator==(const RingReport&) const = default;
};

RingReport ring_report(int n);

struct BraidReport {
    int n = 0;
    int level = 0;
    cd q, r, z, tau;
    std::array<cd, 3> eigenvalues;
    std::array<cd, 3> epsilon;
    WenzlResiduals residuals;
    double qdim_jones = 0.0;
    double qdim_closed = 0.0;
};

BraidReport braid_report(int n, int level);

struct DFReport {
    DFParams params;
    std::array<cd, 6> rhos;
    std::array<cd, 3> connection;
    std::array<cd, 3> odetransport;
    double resid = 0.0;
    std::string rho_variant;
    double condition = 0.0;
};

DFReport df_report(int n, int k, cd kappa);

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

json to_json(cd v);
cd complex_from_json(const json& j);

json to_json(const Weight& w);
Weight weight_from_json(const json& j);

json to_json(const AlcoveRow& r);
AlcoveRow alcove_row_from_json(const json& j);

json to_json(const FusionReport& r);
FusionReport fusion_report_from_json(const json& j);

json to_json(const RingReport& r);
RingReport ring_report_from_json(const json& j);

json to_json(const PerronFrobeniusReport& r);

json to_json(const BraidReport& r);
BraidReport braid_report_from_json(const json& j);

json to_json(const ConnectionResult& r);
ConnectionResult connection_from_json(const json& j);

json to_json(const DFReport& r);
DFReport df_report_from_json(const json& j);

}  // namespace fusion_forge
