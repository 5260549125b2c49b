#include "hsum/index_vector.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace hsum {

IndexVector::IndexVector(std::vector<int> indices) : indices_(std::move(indices))
{
    if (indices_.empty()) throw std::invalid_argument("index vector must be nonempty");
    for (int a : indices_)
        if (a == 0) throw std::invalid_argument("index vector entries must be nonzero");
}

IndexVector IndexVector::parse(std::string_view text)
{
    std::vector<int> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (true) {
        skip_ws();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits) throw std::invalid_argument("bad index list: '" + std::string(text) + "'");
        out.push_back(std::atoi(std::string(text.substr(start, i - start)).c_str()));
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != ',') throw std::invalid_argument("bad index list: '" + std::string(text) + "'");
        ++i;
    }
    return IndexVector(std::move(out));
}

int IndexVector::weight() const
{
    int w = 0;
    for (int a : indices_) w += a < 0 ? -a : a;
    return w;
}

IndexVector IndexVector::tail() const
{
    IndexVector t;
    t.indices_.assign(indices_.begin() + 1, indices_.end());
    return t;
}

std::string IndexVector::to_string() const
{
    std::string s;
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(indices_[k]);
    }
    return s;
}

int contract(int a, int b)
{
    int s = ((a < 0) != (b < 0)) ? -1 : 1;
    return s * (std::abs(a) + std::abs(b));
}

} // namespace hsum
