// Diagonal cells of symmetric tree-like tableaux: generate B_n, check it is
// real-rooted, and compare its Bernoulli decomposition with the exact moments.

#include "polyrec/polyrec.hpp"

#include <iostream>

int main() {
    using namespace polyrec;
    auto const spec = builtin(family::abn{});
    auto const seq = generate(spec, 12);
    for (long n : {2L, 6L, 12L}) {
        auto const& b = seq[static_cast<std::size_t>(n)];
        auto const rep = make_clt_report(b, n);
        std::cout << "B_" << n << " = " << to_text(b) << '\n'
                  << "  mean " << to_string(rep.moments.mean) << ", variance " << to_string(rep.variance)
                  << (rep.variance_contained ? " (inside Bernoulli bracket)" : " (OUTSIDE bracket)") << '\n'
                  << "  lyapunov ratio in [" << rep.lyapunov.lo << ", " << rep.lyapunov.hi << "]\n";
    }
}
