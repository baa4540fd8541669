#include "fano/form.hpp"

#include <sstream>

namespace fano {

namespace {
int exp_total(const ExpVec& e) {
    int s = 0;
    for (auto v : e) s += v;
    return s;
}
}  // namespace

HForm::HForm(const Field& F, int nvars, int degree) : F_(&F), n_(nvars), d_(degree) {
    if (nvars < 1 || nvars > 5) throw ParseError("form must have 1..5 variables");
    if (degree < 0) throw ParseError("negative degree");
}

void HForm::set(const ExpVec& e, const Fq& v) {
    for (int i = n_; i < 5; ++i)
        if (e[static_cast<std::size_t>(i)]) throw MismatchError("exponent outside variable range");
    if (exp_total(e) != d_) throw MismatchError("monomial degree mismatch");
    if (v.is_zero())
        c_.erase(e);
    else
        c_[e] = v;
}

Fq HForm::coeff(const ExpVec& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? F_->zero() : it->second;
}

HForm HForm::operator+(const HForm& o) const {
    if (d_ != o.d_ || n_ != o.n_) throw MismatchError("adding forms of different shape");
    HForm r = *this;
    for (const auto& [e, v] : o.c_) r.set(e, r.coeff(e) + v);
    return r;
}

HForm HForm::operator-(const HForm& o) const {
    if (d_ != o.d_ || n_ != o.n_) throw MismatchError("subtracting forms of different shape");
    HForm r = *this;
    for (const auto& [e, v] : o.c_) r.set(e, r.coeff(e) - v);
    return r;
}

HForm HForm::operator*(const HForm& o) const {
    if (n_ != o.n_) throw MismatchError("multiplying forms in different variable counts");
    HForm r(*F_, n_, d_ + o.d_);
    for (const auto& [e1, v1] : c_)
        for (const auto& [e2, v2] : o.c_) {
            ExpVec e{};
            for (int i = 0; i < 5; ++i)
                e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
                    e1[static_cast<std::size_t>(i)] + e2[static_cast<std::size_t>(i)]);
            r.set(e, r.coeff(e) + v1 * v2);
        }
    return r;
}

HForm HForm::scaled(const Fq& a) const {
    HForm r(*F_, n_, d_);
    if (a.is_zero()) return r;
    for (const auto& [e, v] : c_) r.set(e, v * a);
    return r;
}

HForm HForm::pow(int e) const {
    HForm r(*F_, n_, 0);
    r.set(ExpVec{}, F_->one());
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool operator==(const HForm& a, const HForm& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.c_ == b.c_;
}

Fq HForm::eval(std::span<const Fq> x) const {
    if (static_cast<int>(x.size()) != n_) throw MismatchError("evaluation dimension mismatch");
    const Field& F = *x[0].F;
    Fq r = F.zero();
    for (const auto& [e, v] : c_) {
        Fq t = v.F == &F ? v : v.F->embed(v, F);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t = t * x[static_cast<std::size_t>(i)];
        r = r + t;
    }
    return r;
}

Fq HForm::eval(const ProjPoint& p) const {
    if (p.dim() + 1 != n_) throw MismatchError("point dimension mismatch");
    return eval(std::span<const Fq>(p.coords().data(), p.coords().size()));
}

HForm HForm::partial(int var) const {
    HForm r(*F_, n_, d_ > 0 ? d_ - 1 : 0);
    for (const auto& [e, v] : c_) {
        auto ev = e[static_cast<std::size_t>(var)];
        if (!ev) continue;
        ExpVec e2 = e;
        e2[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(ev - 1);
        r.set(e2, r.coeff(e2) + F_->from_int(ev) * v);
    }
    return r;
}

HForm HForm::compose(const std::vector<HForm>& subs) const {
    if (static_cast<int>(subs.size()) != n_) throw MismatchError("compose arity mismatch");
    int inner = subs[0].degree();
    int inner_vars = subs[0].nvars();
    for (const auto& s : subs)
        if (s.degree() != inner || s.nvars() != inner_vars)
            throw MismatchError("compose with non-uniform substituents");
    HForm r(*F_, inner_vars, d_ * inner);
    for (const auto& [e, v] : c_) {
        HForm term(*F_, inner_vars, 0);
        term.set(ExpVec{}, v);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                term = term * subs[static_cast<std::size_t>(i)];
        r = r + term;
    }
    return r;
}

BForm HForm::restrict_to_line(const Line& L) const {
    const Field& Fl = L.field();
    if (L.ambient_dim() + 1 != n_) throw MismatchError("line not in the form's space");
    // Expand monomial by monomial: each variable restricts to the linear
    // binary form a_i s + b_i t with (a, b) the canonical basis rows.
    BForm out(Fl, d_);
    const auto& B = L.basis();
    for (const auto& [e, v] : c_) {
        // Product of linear forms, dense in degree <= d.
        std::vector<Fq> prod{v.F == &Fl ? v : v.F->embed(v, Fl)};
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) {
                std::vector<Fq> next(prod.size() + 1, Fl.zero());
                const Fq& a = B[0][static_cast<std::size_t>(i)];
                const Fq& b = B[1][static_cast<std::size_t>(i)];
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    next[j + 1] = next[j + 1] + prod[j] * a;  // s part raises s-degree
                    next[j] = next[j] + prod[j] * b;
                }
                prod = std::move(next);
            }
        }
        for (std::size_t j = 0; j < prod.size(); ++j)
            out.coeff(static_cast<int>(j)) = out.coeff(static_cast<int>(j)) + prod[j];
    }
    return out;
}

Fq HForm::eval_combination(const std::vector<ProjPoint>& basis, std::span<const Fq> lambda) const {
    const Field& F = basis[0].field();
    std::vector<Fq> x(static_cast<std::size_t>(n_), F.zero());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (int i = 0; i < n_; ++i)
            x[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i)] + lambda[b] * basis[b][i];
    return eval(x);
}

HForm HForm::embedded(const Field& top) const {
    HForm r(top, n_, d_);
    for (const auto& [e, v] : c_) r.set(e, F_->embed(v, top));
    return r;
}

std::string HForm::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v.str();
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) os << "*x" << i;
    }
    return os.str();
}

HForm HForm::split_quadric(const Field& F) {
    HForm q(F, 4, 2);
    q.set(ExpVec{1, 0, 0, 1, 0}, F.one());
    q.set(ExpVec{0, 1, 1, 0, 0}, F.neg(F.one()));
    return q;
}

}  // namespace fano
