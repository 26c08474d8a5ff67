#include "fusionmod/perm.hpp"

#include <cctype>

namespace fusionmod {

std::vector<Perm> all_permutations(int n) {
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Perm> matrix_stabilizer(const std::vector<IntMatrix>& ms, int n) {
    std::vector<Perm> out;
    for (const auto& p : all_permutations(n)) {
        bool fixes = true;
        for (const auto& m : ms) {
            if (conjugate(m, p) != m) {
                fixes = false;
                break;
            }
        }
        if (fixes) out.push_back(p);
    }
    return out;
}

Perm parse_cycles(const std::string& word, int n) {
    Perm p = identity_perm(n);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < word.size() && std::isspace(static_cast<unsigned char>(word[pos]))) ++pos;
    };
    skip_ws();
    if (pos == word.size() || word == "e") return p;
    while (pos < word.size()) {
        skip_ws();
        if (pos == word.size()) break;
        if (word[pos] != '(') throw Error("bad cycle word: " + word);
        ++pos;
        std::vector<int> cyc;
        while (pos < word.size() && word[pos] != ')') {
            if (std::isspace(static_cast<unsigned char>(word[pos])) || word[pos] == ',') {
                ++pos;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(word[pos])))
                throw Error("bad cycle word: " + word);
            // Single-digit points: enough for S_4 and friends.
            int pt = word[pos] - '0';
            if (pt < 1 || pt > n) throw Error("cycle point out of range in: " + word);
            cyc.push_back(pt - 1);
            ++pos;
        }
        if (pos == word.size()) throw Error("unterminated cycle in: " + word);
        ++pos;  // ')'
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int from = cyc[i];
            const int to = cyc[(i + 1) % cyc.size()];
            if (p[static_cast<std::size_t>(from)] != from)
                throw Error("point repeated in cycle word: " + word);
            p[static_cast<std::size_t>(from)] = to;
        }
    }
    return p;
}

std::string cycle_string(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)] || p[static_cast<std::size_t>(i)] == i) continue;
        out += '(';
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            out += std::to_string(j + 1);
            j = p[static_cast<std::size_t>(j)];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::vector<int> cycle_type(const Perm& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> lens;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++len;
            j = p[static_cast<std::size_t>(j)];
        }
        if (len >= 2) lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

int perm_order(const Perm& p) {
    int ord = 1;
    for (int len : cycle_type(p)) ord = std::lcm(ord, len);
    return ord;
}

}  // namespace fusionmod
