// Classify spaces up to basis equivalence and certify one strict domination.
#include <iostream>

#include "tsn/classify.hpp"

using namespace tsn;

static void show_class(const char* text) {
    Space sp = space_parse(text);
    std::cout << space_str(sp) << "  ->  " << class_str(canonical_class(sp)) << "\n";
}

int main() {
    // the class keeps only the dominant pair, and of that only the leading
    // exponent tower and the matching root of the weight
    show_class("{S[1],1/2}");
    show_class("{S[2],1/4}");
    show_class("{S[w^3*4+w*5],1/16}");
    show_class("{S[w^3],1/2}");
    show_class("{[<=2],1/2}");
    show_class("{[<=3],2/3}");

    std::cout << "\nfourth root of 1/16 collapses to 1/2: "
              << (same_class(space_parse("{S[w^3*4+w*5],1/16}"), space_parse("{S[w^3],1/2}"))
                      ? "same class"
                      : "different")
              << "\n";

    // a mean spread thin over the weaker family certifies strict domination:
    // one application of the stronger pair already norms it at 1/2, while
    // every depth-4 split bound under the weaker pair stays below 1/4
    Pair weak{fam_card(2), rat(1, 2)};
    Pair strong{fam_schreier(Ordinal::fin(1)), rat(1, 2)};
    Witness w = incomparability_witness(weak, strong, rat(2));
    std::cout << "\nwitness against {[<=2],1/2} ~ {S[1],1/2}:\n";
    std::cout << "  mean support " << set_str(w.mean.support()) << "\n";
    std::cout << "  lower bound under the strong pair  " << rat_str(w.lower1) << "\n";
    std::cout << "  upper bound under the weak pair    " << rat_str(w.upper0) << "\n";
    return 0;
}
