#include "hsum/basis.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hsum {

namespace {

using IV = IndexVector;

const std::vector<IV> kB1 = {{-1}, {1}};

const std::vector<IV> kB2 = {{-2}, {2}, {-1, 1}, {1, -1}, {1, 1}, {-1, -1}};

const std::vector<IV> kB3 = {{-3},        {3},         {-2, -1},     {-2, 1},     {2, -1},    {2, 1},
                             {-1, 1, -1}, {-1, 1, 1},  {1, -2},      {1, 2},      {1, -1, -1}, {1, -1, 1},
                             {1, 1, -1},  {1, 1, 1},   {-1, -2},     {-1, 2},     {-1, -1, -1}, {-1, -1, 1}};

const std::vector<IV> kB4 = {
    {-4},          {4},           {-3, -1},      {-3, 1},       {2, -2},       {3, -1},       {3, 1},
    {-2, -1, -1},  {-2, -1, 1},   {-2, 1, -1},   {-2, 1, 1},    {2, -1, -1},   {2, -1, 1},    {2, 1, -1},
    {2, 1, 1},     {-1, 1, -1, -1}, {-1, 1, -1, 1}, {-1, 1, 1, 1}, {1, -3},     {1, 3},        {1, -2, -1},
    {1, -2, 1},    {1, -1, -2},   {1, -1, 2},    {1, 1, -2},    {1, 1, 2},     {1, 2, -1},    {1, 2, 1},
    {1, -1, -1, -1}, {1, -1, -1, 1}, {1, -1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, -1}, {1, 1, -1, 1}, {1, 1, 1, -1},
    {1, 1, 1, 1},  {-1, -3},      {-1, 3},       {-1, -2, -1},  {-1, -2, 1},   {-1, -1, -2},  {-1, -1, 2},
    {-1, 1, -2},   {-1, 1, 2},    {-1, 2, -1},   {-1, 2, 1},    {-1, -1, -1, -1}, {-1, -1, -1, 1}, {-1, -1, 1, -1},
    {-1, -1, 1, 1}, {-1, 1, 1, -1}, {-2, -2},    {-2, 2},       {2, 2}};

struct Universe {
    std::vector<IV> all;
    std::unordered_map<IV, int> index;
};

const Universe& universe()
{
    static const Universe u = [] {
        Universe r;
        for (const auto* b : {&kB1, &kB2, &kB3, &kB4})
            for (const IV& v : *b) {
                r.index.emplace(v, static_cast<int>(r.all.size()));
                r.all.push_back(v);
            }
        return r;
    }();
    return u;
}

ConstantMonomial cm(int ln2, int z2 = 0, int z3 = 0, int li4 = 0)
{
    return ConstantMonomial(std::array<int, 4>{ln2, z2, z3, li4});
}

std::vector<AnsatzEntry> ansatz4()
{
    auto s = [&](IV v, ConstantMonomial c = ConstantMonomial()) { return AnsatzEntry{c, std::move(v)}; };
    auto k = [](ConstantMonomial c) { return AnsatzEntry{c, std::nullopt}; };
    const ConstantMonomial l1 = cm(1), l2 = cm(2), l3 = cm(3), z2 = cm(0, 1), z2l1 = cm(1, 1), z3 = cm(0, 0, 1);
    return {
        k(cm(0, 2)), k(cm(2, 1)), k(cm(4)), k(cm(0, 0, 0, 1)),
        s({-4}), s({-3}, l1), s({-2}, z2), s({-2}, l2), s({-1}, z2l1), s({-1}, l3), s({1}, z2l1), s({1}, l3),
        s({2}, z2), s({2}, l2), s({3}, l1), s({4}),
        s({-3, -1}), s({-3, 1}), s({-2, -2}), s({-2, -1}, l1), s({-2, 1}, l1), s({-2, 2}), s({-1, -3}),
        s({-1, -2}, l1), s({-1, -1}, z2), s({-1, -1}, l2), s({-1, 1}, z2), s({-1, 1}, l2), s({-1, 2}, l1),
        s({-1, 3}), s({1, -3}), s({1, -2}, l1), s({1, -1}, z2), s({1, -1}, l2), s({1, 1}, z2), s({1, 1}, l2),
        s({1, 2}, l1), s({1, 3}), s({2, -2}), s({2, -1}, l1), s({2, 1}, l1), s({2, 2}), s({3, -1}), s({3, 1}),
        s({-2, -1, -1}), s({-2, -1, 1}), s({-2, 1, -1}), s({-2, 1, 1}), s({-1, -2, -1}), s({-1, -2, 1}),
        s({-1, -1, -2}), s({-1, -1, -1}, l1), s({-1, -1, 1}, l1), s({-1, -1, 2}), s({-1, 1, -2}),
        s({-1, 1, -1}, l1), s({-1, 1, 1}, l1), s({-1, 1, 2}), s({-1, 2, -1}), s({-1, 2, 1}), s({1, -2, -1}),
        s({1, -2, 1}), s({1, -1, -2}), s({1, -1, -1}, l1), s({1, -1, 1}, l1), s({1, -1, 2}), s({1, 1, -2}),
        s({1, 1, -1}, l1), s({1, 1, 1}, l1), s({1, 1, 2}), s({1, 2, -1}), s({1, 2, 1}), s({2, -1, -1}),
        s({2, -1, 1}), s({2, 1, -1}), s({2, 1, 1}),
        s({-1, -1, -1, -1}), s({-1, -1, -1, 1}), s({-1, -1, 1, -1}), s({-1, -1, 1, 1}), s({-1, 1, -1, -1}),
        s({-1, 1, -1, 1}), s({-1, 1, 1, -1}), s({-1, 1, 1, 1}), s({1, -1, -1, -1}), s({1, -1, -1, 1}),
        s({1, -1, 1, -1}), s({1, -1, 1, 1}), s({1, 1, -1, -1}), s({1, 1, -1, 1}), s({1, 1, 1, -1}),
        s({1, 1, 1, 1}),
        k(cm(1, 0, 1)), s({-1}, z3), s({1}, z3),
    };
}

} // namespace

const std::vector<IndexVector>& build_basis(int w)
{
    switch (w) {
    case 1: return kB1;
    case 2: return kB2;
    case 3: return kB3;
    case 4: return kB4;
    default: throw std::out_of_range("basis weight must be in 1..4");
    }
}

const std::vector<IndexVector>& basis_universe() { return universe().all; }

int universe_index(const IndexVector& v)
{
    const auto& idx = universe().index;
    auto it = idx.find(v);
    return it == idx.end() ? -1 : it->second;
}

bool in_basis(const IndexVector& v) { return universe_index(v) >= 0; }

std::vector<AnsatzEntry> build_ansatz(int w)
{
    if (w == 4) return ansatz4();
    if (w < 1 || w > 4) throw std::out_of_range("ansatz weight must be in 1..4");
    std::vector<AnsatzEntry> out;
    for (const IV& v : build_basis(w)) out.push_back({ConstantMonomial(), v});
    for (int k = w - 1; k >= 1; --k)
        for (const ConstantMonomial& c : build_constants(w - k))
            for (const IV& v : build_basis(k)) out.push_back({c, v});
    for (const ConstantMonomial& c : build_constants(w)) out.push_back({c, std::nullopt});
    return out;
}

} // namespace hsum
