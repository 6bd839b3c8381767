// Compute a few exact norms with their certifying functionals.
#include <iostream>

#include "tsn/json_io.hpp"
#include "tsn/norm.hpp"

using namespace tsn;

static void show(const Space& sp, const Vector& x) {
    NormResult r = norm(sp, x);
    std::cout << "space " << space_str(sp) << "\n";
    std::cout << "  vector      " << vector_str(x) << "\n";
    std::cout << "  norm        " << rat_str(r.value) << "\n";
    std::cout << "  certificate " << fun_to_json(r.cert).dump() << "\n";
    std::cout << "  re-evaluates to " << rat_str(eval(sp, r.cert, x)) << "\n\n";
}

int main() {
    // the flat vector on {2,...,5}: three unit leaves from position 3 on
    // beat any split that insists on covering position 2
    Space s = space_parse("{S[1],1/2}");
    Vector x;
    for (long long p = 2; p <= 5; ++p) x.set(p, rat(1));
    show(s, x);

    // same vector, size family with the ell_p weight
    show(space_parse("{[<=4],1/2}"), x);

    // a mixed space: the strongest split may mix both families
    Space m = space_parse("{S[1],1/2;[<=3],2/3}");
    Vector y;
    y.set(1, rat(1));
    y.set(2, rat(1));
    y.set(3, rat(1));
    show(m, y);

    // norms grow slowly: the flat vector of length 16 under [<=4] reaches 4
    Vector ones16;
    for (long long p = 1; p <= 16; ++p) ones16.set(p, rat(1));
    std::cout << "flat 16 under {[<=4],1/2}: "
              << rat_str(norm(space_parse("{[<=4],1/2}"), ones16, 16).value) << "\n";
    return 0;
}
