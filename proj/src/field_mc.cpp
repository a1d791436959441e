// SPDX-License-Identifier: Apache-2.0
#include "conebessel/errors.hpp"
#include "conebessel/field.hpp"
#include "conebessel/mc.hpp"
#include "conebessel/measures.hpp"

namespace conebessel {

McEstimate spherical_poly_mc(const Partition& lambda, const HermMatrix& x, const FieldParams& fp,
                             std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw ValidationError("spherical_poly_mc needs at least 100 samples");
  if (fp.field == Field::H) throw ValidationError("spherical_poly_mc: quaternionic case has no matrix form");
  if (x.rank() != fp.q) throw ValidationError("spherical_poly_mc: rank mismatch");
  if (lambda.length() > fp.q) throw ValidationError("spherical_poly_mc: l(lambda) > q");
  return mc_mean(samples, seed, [&](RngStream& rng) {
    thread_local Mat u;
    haar_frame(fp.q, fp.q, fp.field, rng, u);
    return power_function(trusted_herm(u * x.matrix() * u.adjoint(), fp.field), lambda);
  });
}

}  // namespace conebessel
