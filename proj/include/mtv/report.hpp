#pragma once

#include "mtv/motivic.hpp"
#include "mtv/numoracle.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mtv {

struct Check {
    std::string name;
    std::string anchor;  // the statement being checked
    bool pass = false;
    std::string detail;
    std::optional<double> residual, bound;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;

    int failures() const;
};

struct SuiteOptions {
    int max_weight = 8;
    NumEnv env;
    std::string data_dir = MTV_DATA_DIR;
};

// indexcore, wordalg, regularize, closedform, motivic, matrices, golden, numeric
const std::vector<std::string>& suite_names();
// "all" runs every suite; throws std::invalid_argument on an unknown name
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& opt);

nlohmann::json to_json(const SuiteReport& r);
std::string format_report(const SuiteReport& r, bool failures_only = false);

// ---- golden fixtures
struct GoldenMatrix {
    Kind kind = Kind::S;
    int N = 0, level = 0;
    std::vector<Word> rows, cols;
    std::vector<std::vector<Aff>> entries;
};
// entries are "p/q", {"const","lambda"} objects, or symbolic strings in the
// coefficient names c<word>, d<word> and lambda
GoldenMatrix load_golden_matrix(const std::string& path);
// "8*c23-8*c32+lambda-1"; c<word>: zeta^l(word)/zeta^l(w), d<word>: t~^l(word)/zeta^l(w)
Aff parse_coeff_expr(const std::string& s);
Rat coeff_by_name(const std::string& name);
// empty when equal
std::vector<std::string> diff_matrix(const FiltMatrix& m, const GoldenMatrix& g);

nlohmann::json matrix_json(const FiltMatrix& m);
std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);  // S, H, Hstar; throws std::invalid_argument

// ---- numeric identities
struct IdentityCheck {
    std::string name;
    std::string closed_form;
    MPFloat lhs, rhs;  // closed form, direct sum
    double residual = 0, tol = 1e-6;
    bool pass = false;
};
// t2212 (V = log2; b = 0 through the stuffle reduction), t2232, z2232, t12n (n = a),
// t22, z22, hoffman132, hoffman32
IdentityCheck verify_identity(const std::string& id, int a, int b, const NumEnv& env);
const std::vector<std::string>& identity_names();

}  // namespace mtv
