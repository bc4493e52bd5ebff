#include "fdscat/exact_series.hpp"

#include "fdscat/error.hpp"

#include <algorithm>

namespace fdscat
{

ExpLaurent::ExpLaurent(int exp_coeff, int min_power, std::vector<Rational> coeffs)
    : a_(exp_coeff), lo_(min_power), q_(std::move(coeffs))
{
}

ExpLaurent ExpLaurent::chi(int l)
{
    ChiPolynomial p(l);
    return ExpLaurent(-1, 0, p.coeffs());
}

ExpLaurent ExpLaurent::constant(Rational v) { return ExpLaurent(0, 0, {std::move(v)}); }

Rational ExpLaurent::coeff(int n) const
{
    const int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(q_.size())) return 0;
    return q_[i];
}

bool ExpLaurent::is_zero() const
{
    return std::all_of(q_.begin(), q_.end(), [](const Rational& v) { return v == 0; });
}

ExpLaurent ExpLaurent::derivative() const
{
    // d/dz [e^{az} q_n z^{-n}] = e^{az} [a q_n z^{-n} - n q_n z^{-(n+1)}]
    std::vector<Rational> out(q_.size() + 1);
    for (std::size_t i = 0; i < q_.size(); ++i) {
        const int n = lo_ + static_cast<int>(i);
        out[i] += Rational(a_) * q_[i];
        out[i + 1] -= Rational(n) * q_[i];
    }
    return ExpLaurent(a_, lo_, std::move(out)).trimmed();
}

ExpLaurent ExpLaurent::reflect() const
{
    std::vector<Rational> out(q_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((lo_ + static_cast<int>(i)) % 2 != 0) out[i] = -out[i];
    }
    return ExpLaurent(-a_, lo_, std::move(out));
}

ExpLaurent ExpLaurent::shift(int p) const { return ExpLaurent(a_, lo_ + p, q_); }

ExpLaurent ExpLaurent::trimmed() const
{
    std::size_t first = 0, last = q_.size();
    while (first < last && q_[first] == 0) ++first;
    while (last > first && q_[last - 1] == 0) --last;
    if (first == last) return ExpLaurent(0, 0, {});
    return ExpLaurent(a_, lo_ + static_cast<int>(first), std::vector<Rational>(q_.begin() + first, q_.begin() + last));
}

ExpLaurent operator*(const ExpLaurent& f, const ExpLaurent& g)
{
    if (f.q_.empty() || g.q_.empty()) return {};
    std::vector<Rational> out(f.q_.size() + g.q_.size() - 1);
    for (std::size_t i = 0; i < f.q_.size(); ++i) {
        if (f.q_[i] == 0) continue;
        for (std::size_t k = 0; k < g.q_.size(); ++k) out[i + k] += f.q_[i] * g.q_[k];
    }
    return ExpLaurent(f.a_ + g.a_, f.lo_ + g.lo_, std::move(out)).trimmed();
}

ExpLaurent operator+(const ExpLaurent& f, const ExpLaurent& g)
{
    if (f.is_zero()) return g.trimmed();
    if (g.is_zero()) return f.trimmed();
    if (f.a_ != g.a_) throw DomainError("ExpLaurent: sum of different exponentials");
    const int lo = std::min(f.lo_, g.lo_);
    const int hi = std::max(f.lo_ + static_cast<int>(f.q_.size()), g.lo_ + static_cast<int>(g.q_.size()));
    std::vector<Rational> out(hi - lo);
    for (int n = lo; n < hi; ++n) out[n - lo] = f.coeff(n) + g.coeff(n);
    return ExpLaurent(f.a_, lo, std::move(out)).trimmed();
}

ExpLaurent operator*(const Rational& s, const ExpLaurent& f)
{
    std::vector<Rational> out(f.q_);
    for (auto& v : out) v *= s;
    return ExpLaurent(f.a_, f.lo_, std::move(out)).trimmed();
}

ExpLaurent operator-(const ExpLaurent& f, const ExpLaurent& g) { return f + Rational(-1) * g; }

bool operator==(const ExpLaurent& f, const ExpLaurent& g)
{
    const auto a = f.trimmed(), b = g.trimmed();
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.a_ == b.a_ && a.lo_ == b.lo_ && a.q_ == b.q_;
}

cplx ExpLaurent::operator()(cplx z) const
{
    if (q_.empty()) return 0.0;
    const cplx w = 1.0 / z;
    cplx sum = 0.0;
    for (int i = static_cast<int>(q_.size()) - 1; i >= 0; --i) sum = sum * w + static_cast<double>(q_[i]);
    return std::exp(static_cast<double>(a_) * z) * std::pow(w, lo_) * sum;
}

ExpLaurent wronskian(const ExpLaurent& f, const ExpLaurent& g) { return f * g.derivative() - f.derivative() * g; }

} // namespace fdscat
