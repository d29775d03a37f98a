#pragma once

#include "gpcb/gpcb.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gpcb {

/// Component pair resolved from a code name.
struct NamedCode {
    CodeSpec code1;
    CodeSpec code2;
    Construction construction = Construction::c1;
    /// Sub-block multiplier implied by the name (1 unless the name carries
    /// scaled lengths such as GPCB-BCH(7500,5100)).
    int M = 1;
};

/**
 * Resolves a code name. Accepted forms:
 *  - GPCB-BCH(L,K), GPCB-RS(L,K), GPCB-BCH-RS(L,K), optionally scaled by
 *    M in {10, 100, 1000}; the "PCB-" prefix is accepted too.
 *  - custom component lists "bch:n,k,t", "rs:n,k,t", or "bch:n,k,t+rs:n,k,t"
 *    (a single component is used for both encoders).
 * BCH+RS pairs resolve to construction c2, same-family pairs to c1.
 */
NamedCode parse_code(std::string_view name);

/// Names of the nine component pairs of the reference table (M = 1 form).
std::vector<std::string> catalog_code_names();

/// Further codes used by the experiments (iteration, M and length studies).
std::vector<std::string> experiment_code_names();

} // namespace gpcb
