// Classifies the Whitney umbrella, a random A-equivalent copy of it, and a
// perturbed 2-Morin germ, printing the evidence.

#include <iostream>

#include <morin/morin.hpp>

using namespace morin;

namespace
{

void show(const std::string &label, const MapJet &f, int r_max)
{
    const MorinResult res = morin_classify(f, r_max);
    std::cout << label << ": " << to_string(res.verdict) << '\n';
    if (res.evidence) {
        for (std::size_t j = 0; j < res.evidence->chain_ranks.size(); ++j) {
            std::cout << "  rank d(Lambda..eta^" << j << " Lambda)_0 = " << res.evidence->chain_ranks[j] << '\n';
        }
    }
}

} // namespace

int main()
{
    const MapJet wu = parse_germ("map 2 -> 3 order 4 : [x1, x1*x2, x2^2]").to_map_jet();
    show("Whitney umbrella", wu, 2);

    const MapJet copy = conjugate(wu, random_diffeo(2, 3, 17, true, 4), random_diffeo(3, 3, 18, true, 4));
    std::cout << "conjugated copy:\n";
    for (int i = 0; i < copy.target_dim(); ++i) {
        std::cout << "  f" << i + 1 << " = " << copy[i] << '\n';
    }
    show("conjugated copy", copy, 2);

    const MapJet h02 = parse_germ("map 4 -> 5 order 5 : [x2 + x1*x4^3, -x1 + 1/2*x3^2, x3 - x2*x4,"
                                  " x1*x4 + x2*x4^2 + 3*x1^2*x2, x3*x4 + x4^3 - x4^5]")
                           .to_map_jet();
    show("perturbed h_{0,2}", h02, 3);
    std::cout << "D = " << d_invariant(h02, 2) << '\n';
}
