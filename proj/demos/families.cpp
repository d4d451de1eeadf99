// Walk the named families and show where the two bounds meet.

#include <pinchcalc/pinchcalc.hpp>

#include <iostream>

int main() {
    using namespace pinchcalc;

    std::cout << "T(2k+2, 2k+1): gap and n agree\n";
    for (unsigned long k = 1; k <= 6; ++k) {
        const InvariantReport r = report(batson_family(k));
        std::cout << "  " << r.knot << "  gap=" << r.gap << "  n=" << r.n << '\n';
    }

    std::cout << "through T(4,9): n overshoots by at least one\n";
    for (std::size_t n = 2; n <= 6; ++n) {
        const TorusKnot k = counterexample_family(n);
        const Classification c = classify(k);
        std::cout << "  " << k << "  bounds [" << c.detail.gamma4_lower << "," << c.detail.gamma4_upper
                  << "]  improved upper " << *c.detail.improved_upper << '\n';
    }

    // Seeds grow fast; everything stays exact.
    SeedData seed{30, 3, 7, std::vector<int>(30, 1), std::vector<Integer>(29, Integer(8))};
    const TorusKnot big = synthesize_knot(seed);
    const InvariantReport r = report(big);
    std::cout << "30 moves: p has " << big.p.get_str().size() << " digits, gap=" << r.gap << '\n';
}
