#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure_quadrature.hpp"

namespace hilbert::cli {

struct VerifyContext {
    std::optional<ConvexBody> body;  // unused by prop6, lemmaB1, lemmaB2
    std::uint64_t seed{0};
    QuadratureOptions opts;
    long samples{0};  // <= 0: the statement's default count
};

struct VerifyReport {
    std::string statement;
    long samples{0};
    double worst_slack{0.0};  // NaN when a sample has no finite margin
    bool pass{false};
    nlohmann::ordered_json details;
};

/// thm2 thm3 thm4 prop5 prop6 prop10 cor61 cor62 lemma12 lemma13 lemmaB1 lemmaB2
const std::vector<std::string>& verify_names();

bool verify_needs_body(const std::string& name);

/// Throws InvalidArgument for an unknown name and UnsupportedRepresentation
/// when the body does not fit the statement (e.g. a polygon for thm4).
VerifyReport run_verify(const std::string& name, const VerifyContext& ctx);

nlohmann::ordered_json to_json(const VerifyReport& r);

/// x rounded to 12 significant digits; null when not finite.
nlohmann::ordered_json number12(double x);

}  // namespace hilbert::cli
