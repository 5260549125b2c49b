#include "hsum/stuffle.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace hsum {

namespace {

using Word = std::vector<int>;
using Lin = std::map<Word, Rational>;

// Non-strict nesting:
//   (a,A) * (b,B) = a.(A * (b,B)) + b.((a,A) * B) - (a+b).(A * B)
class Stuffler {
public:
    Lin product(const Word& x, const Word& y)
    {
        if (x.empty()) return {{y, Rational(1)}};
        if (y.empty()) return {{x, Rational(1)}};
        auto key = std::make_pair(x, y);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Word xt(x.begin() + 1, x.end()), yt(y.begin() + 1, y.end());
        Lin out;
        prepend_into(out, x.front(), product(xt, y), 1);
        prepend_into(out, y.front(), product(x, yt), 1);
        prepend_into(out, contract(x.front(), y.front()), product(xt, yt), -1);
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    static void prepend_into(Lin& out, int head, const Lin& src, int sign)
    {
        for (const auto& [w, c] : src) {
            Word n;
            n.reserve(w.size() + 1);
            n.push_back(head);
            n.insert(n.end(), w.begin(), w.end());
            out[n] += sign > 0 ? c : Rational(-c);
        }
    }

    std::mutex mu_;
    std::map<std::pair<Word, Word>, Lin> memo_;
};

Stuffler& stuffler()
{
    static Stuffler s;
    return s;
}

} // namespace

Expression stuffle_product(const IndexVector& a, const IndexVector& b)
{
    Expression e;
    for (const auto& [w, c] : stuffler().product(a.indices(), b.indices())) {
        Term t{c, ConstantMonomial(), std::nullopt};
        if (!w.empty()) t.sum = SumRef{IndexVector(w), ArgTag::Z};
        e.add(std::move(t));
    }
    return canonicalize(e);
}

} // namespace hsum
