// Prints the number of A-isotopy classes for r <= 8, a <= 4 and, for every
// square signed normal form with m <= 8, its D sign and a verified witness.

#include <iomanip>
#include <iostream>

#include <morin/morin.hpp>

using namespace morin;

int main()
{
    std::cout << "classes   a=1  a=2  a=3  a=4\n";
    for (int r = 1; r <= 8; ++r) {
        std::cout << "r=" << r << "      ";
        for (int a = 1; a <= 4; ++a) {
            const IsotopyReport rep = isotopy_classify(r, a, false);
            std::cout << std::setw(5) << (std::to_string(rep.class_count) + (rep.class_count == 2 ? "*" : ""));
        }
        std::cout << '\n';
    }
    std::cout << "(* = two classes, separated by the sign of D)\n\n";

    for (int r = 1; r <= 4; ++r) {
        for (int a = 1; r * (a + 1) <= 8; ++a) {
            for (int e1 : {1, -1}) {
                for (int e2 : {1, -1}) {
                    const FormSpec s{r, a, 0, e1, e2};
                    const Witness w = isotopy_witness(s);
                    std::cout << "r=" << r << " a=" << a << " eps=(" << std::setw(2) << e1 << "," << std::setw(2)
                              << e2 << ")  D=" << std::setw(2) << d_invariant(isotopy_form(s), r) << "  -> eps=("
                              << std::setw(2) << w.to.eps1 << "," << std::setw(2) << w.to.eps2 << ") in "
                              << w.steps.size() << " rotations, verified " << (verify_witness(w) ? "yes" : "no")
                              << '\n';
                }
            }
        }
    }
}
