// Walk-through: ULBs against known codes and a numerical search on S^2.

#include "ulbkit/ulbkit.hpp"

#include <cstdio>

using namespace ulbkit;

namespace {

void compare(const SpaceDescriptor& s, const char* name, const Potential& h) {
    Code c = named_config(s, name);
    const double M = static_cast<double>(c.size());
    UlbReport r = ulb(s, M, h);
    const double e = energy(s, c, h);
    std::printf("%-18s %-20s M=%3.0f tau=%d  ULB=%14.8f  energy=%14.8f  gap=%.2e\n", s.name().c_str(), name, M,
                r.rule.tau(), r.value_sum, e, e - r.value_sum);
}

}  // namespace

int main() {
    std::printf("ulbkit %s\n\n", version());

    std::printf("Sharp and near-sharp codes (Riesz p = 1):\n");
    const Potential riesz1 = riesz(1.0);
    compare(sphere(3), "simplex", riesz1);
    compare(sphere(3), "cross_polytope", riesz1);
    compare(sphere(3), "icosahedron", riesz1);
    compare(sphere(3), "cube", riesz1);
    compare(sphere(8), "cross_polytope", riesz1);

    std::printf("\nBinary codes (Gaussian c = 1):\n");
    const Potential g = gaussian(1.0);
    compare(hamming(8), "extended_hamming_8", g);
    compare(hamming(6), "parity_check", g);
    compare(johnson(8, 4), "steiner_3_4_8", g);

    std::printf("\nFive points on S^2: ULB, improvement by Q_5, best found energy\n");
    UlbReport base = ulb(sphere(3), 5, riesz1);
    UlbReport better = improve_with_qj(sphere(3), 5, riesz1, 5);
    MinimizeResult best = minimize_sphere(3, 5, riesz1, 8, 1);
    std::printf("  ULB        %.10f\n  improved   %.10f  (P_5 = %.5f, eta = %.5f)\n  minimized  %.10f\n",
                base.value_sum, better.value_sum, better.improvement->p_j, better.improvement->eta, best.energy);

    std::printf("\nDesign bounds D(tau) on S^3:");
    for (int tau = 1; tau <= 8; ++tau) std::printf(" %g", design_bound(sphere(4), tau));
    std::printf("\n");
    return 0;
}
