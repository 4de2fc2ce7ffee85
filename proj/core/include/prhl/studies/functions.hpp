#ifndef PRHL_STUDIES_FUNCTIONS_HPP
#define PRHL_STUDIES_FUNCTIONS_HPP

#include "prhl/lang/ast.hpp"

namespace prhl::studies {

// History operators for the basic random walk:
//   Sigma(H): number of true entries minus number of false entries.
//   P(H):     some chronological prefix H' has Sigma(H') = n. Histories are
//             built by prepending, so chronological prefixes are list
//             suffixes.
void register_walk_functions(lang::FunctionRegistry& reg, const Int& n);

// History operators for the lazy walk on the torus (arithmetic mod q,
// coordinates 1..dim, delta = start2 - start1 componentwise mod q):
//   u(c):           the c-th canonical base vector of length dim.
//   Sigma1(i, H):   drift of coordinate i of the first walk, in [0, q).
//   Sigma2(i, H):   drift of the mirrored second walk, replayed from H and
//                   delta (the second walk flips mov whenever the replayed
//                   offset at the sampled coordinate is nonzero).
//   Met(i, H):      Sigma1(i,H) - Sigma2(i,H) = delta[i] (mod q), i.e. the
//                   walks have coupled in coordinate i.
void register_torus_functions(lang::FunctionRegistry& reg, int dim, long q,
                              const std::vector<long>& delta);

}  // namespace prhl::studies

#endif  // PRHL_STUDIES_FUNCTIONS_HPP
