#include "kmirror/graded.hpp"

namespace kmirror {

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size()) throw error("permutation and degree lengths differ");
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) throw error("not a permutation");
        seen[p] = true;
    }
    long e = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) e += static_cast<long>(degrees[perm[i]]) * degrees[perm[j]];
    return (e & 1) ? -1 : 1;
}

int epsilon_sign(const std::vector<int>& degrees) {
    long e = 0;
    long k = static_cast<long>(degrees.size());
    for (long i = 0; i < k; ++i) e += (k - 1 - i) * degrees[i];
    return (e & 1) ? -1 : 1;
}

int eta_sign(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw error("eta sign needs equal lengths");
    long e = 0, tail = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        e += static_cast<long>(a[i]) * tail;
        tail += b[i];
    }
    return (e & 1) ? -1 : 1;
}

int wedge_sign(wedge_index I, wedge_index J) {
    if (I & J) return 0;
    int s = 0;
    for (int i = 0; i < 32; ++i)
        if (I >> i & 1u) s += std::popcount(J & ((wedge_index(1) << i) - 1));
    return (s & 1) ? -1 : 1;
}

std::string wedge_name(wedge_index I) {
    if (I == 0) return "1";
    std::string s = "e";
    for (int i = 0; i < 32; ++i)
        if (I >> i & 1u) s += std::to_string(i + 1);
    return s;
}

} // namespace kmirror
