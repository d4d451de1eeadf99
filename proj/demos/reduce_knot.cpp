// Reduce a torus knot to the unknot by pinch moves and print both bounds.
//
//   demo_reduce_knot 4 9

#include <pinchcalc/pinchcalc.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace pinchcalc;
    const TorusKnot k = argc == 3 ? normalize(Integer(argv[1]), Integer(argv[2])) : TorusKnot{4, 9};

    const PinchSequence seq = pinch_sequence(k);
    for (std::size_t i = seq.n(); i >= 1; --i) {
        std::cout << seq.knot(i) << "  eps=" << seq.eps(i) << "  ->  " << seq.knot(i - 1) << '\n';
    }

    const InvariantReport r = report(seq);
    std::cout << "sigma=" << r.sigma << " upsilon=" << r.upsilon << '\n'
              << r.gamma4_lower << " <= gamma4 <= " << r.gamma4_upper << '\n';

    const Classification c = classify(seq, r);
    std::cout << to_string(c.tag);
    if (c.detail.known_gamma4) std::cout << " (gamma4 = " << *c.detail.known_gamma4 << ")";
    std::cout << '\n';
}
