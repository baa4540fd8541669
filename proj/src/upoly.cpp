#include "fano/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "fano/rng.hpp"

namespace fano {

UPoly::UPoly(const Field& F, std::vector<Fq> coeffs) : F_(&F), c_(std::move(coeffs)) {
    for (auto& v : c_)
        if (v.F == nullptr) v = F.zero();
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fq UPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return F_->zero();
    return c_[static_cast<std::size_t>(i)];
}

Fq UPoly::lead() const {
    if (c_.empty()) return F_->zero();
    return c_.back();
}

UPoly UPoly::constant(const Field& F, const Fq& a) {
    return UPoly(F, std::vector<Fq>{a});
}

UPoly UPoly::x(const Field& F) {
    return UPoly(F, std::vector<Fq>{F.zero(), F.one()});
}

UPoly UPoly::from_roots_negated(const Field& F, const std::vector<Fq>& rts) {
    // prod (X - r)
    UPoly out = constant(F, F.one());
    for (const Fq& r : rts) {
        UPoly lin(F, std::vector<Fq>{F.neg(r), F.one()});
        out = out * lin;
    }
    return out;
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Fq> out(std::max(c_.size(), o.c_.size()), F_->zero());
    for (std::size_t i = 0; i < out.size(); ++i) {
        Fq v = F_->zero();
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v + o.c_[i];
        out[i] = v;
    }
    return UPoly(*F_, std::move(out));
}

UPoly UPoly::operator-(const UPoly& o) const {
    std::vector<Fq> out(std::max(c_.size(), o.c_.size()), F_->zero());
    for (std::size_t i = 0; i < out.size(); ++i) {
        Fq v = F_->zero();
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v - o.c_[i];
        out[i] = v;
    }
    return UPoly(*F_, std::move(out));
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(*F_);
    std::vector<Fq> out(c_.size() + o.c_.size() - 1, F_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = out[i + j] + c_[i] * o.c_[j];
    }
    return UPoly(*F_, std::move(out));
}

UPoly UPoly::scaled(const Fq& a) const {
    std::vector<Fq> out = c_;
    for (auto& v : out) v = v * a;
    return UPoly(*F_, std::move(out));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(F_->inv(lead()));
}

Fq UPoly::eval(const Fq& a) const {
    Fq r = F_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
    return r;
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    if (degree() < d.degree()) return {UPoly(*F_), *this};
    std::vector<Fq> rem = c_;
    std::vector<Fq> quo(static_cast<std::size_t>(degree() - d.degree()) + 1, F_->zero());
    Fq lead_inv = F_->inv(d.lead());
    for (int i = degree(); i >= d.degree(); --i) {
        Fq f = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (f.is_zero()) continue;
        quo[static_cast<std::size_t>(i - d.degree())] = f;
        for (int j = 0; j <= d.degree(); ++j) {
            auto idx = static_cast<std::size_t>(i - d.degree() + j);
            rem[idx] = rem[idx] - f * d.c_[static_cast<std::size_t>(j)];
        }
    }
    return {UPoly(*F_, std::move(quo)), UPoly(*F_, std::move(rem))};
}

UPoly UPoly::deflate(const Fq& r) const {
    if (!eval(r).is_zero()) throw IdentityFailure("deflate at non-root");
    std::vector<Fq> out(c_.size() - 1, F_->zero());
    Fq carry = F_->zero();
    for (std::size_t i = c_.size(); i-- > 1;) {
        carry = c_[i] + carry * r;
        out[i - 1] = carry;
    }
    return UPoly(*F_, std::move(out));
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly(*F_);
    std::vector<Fq> out(c_.size() - 1, F_->zero());
    for (std::size_t i = 1; i < c_.size(); ++i)
        out[i - 1] = F_->from_int(static_cast<long>(i)) * c_[i];
    return UPoly(*F_, std::move(out));
}

bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

std::string UPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " + ";
        os << c_[i].str() << "*X^" << i;
    }
    return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& m) {
    UPoly r = UPoly::constant(base.field(), base.field().one());
    UPoly b = base.mod(m);
    while (e) {
        if (e & 1) r = (r * b).mod(m);
        b = (b * b).mod(m);
        e >>= 1;
    }
    return r;
}

UPoly frobenius_powmod_x(int e, const UPoly& m) {
    const Field& F = m.field();
    UPoly r = UPoly::x(F).mod(m);
    for (int i = 0; i < e; ++i)
        r = powmod(r, static_cast<std::uint64_t>(F.p()), m);
    return r;
}

bool is_irreducible(const UPoly& f) {
    const Field& F = f.field();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: X^(q^n) == X mod f, and gcd(X^(q^(n/r)) - X, f) = 1 for prime r | n.
    // Iterated Frobenius keeps exponents small: q = p^k, so q^e = p^(k*e).
    int k = F.deg();
    UPoly x = UPoly::x(F);
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) { prime = false; break; }
        if (!prime) continue;
        UPoly h = frobenius_powmod_x(k * (n / r), f);
        if (!(gcd(h - x, f).degree() == 0)) return false;
    }
    UPoly h = frobenius_powmod_x(k * n, f);
    return (h - x).mod(f).is_zero();
}

namespace {

// Threshold under which root search scans the whole field.
constexpr std::uint64_t kExhaustiveRootBound = 257;

std::uint64_t poly_hash(const UPoly& f) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(f.field().p()));
    mix(static_cast<std::uint64_t>(f.field().deg()));
    for (const Fq& a : f.coeffs())
        for (int i = 0; i < f.field().deg(); ++i) mix(a.c[static_cast<std::size_t>(i)]);
    return h;
}

// Distinct roots of f (squarefree, splits into linear factors) by equal-degree
// splitting. Randomness is derandomized by hashing the input, so the output
// is a deterministic function of f.
void split_linear(const UPoly& f, std::vector<Fq>& out, Rng& rng) {
    const Field& F = f.field();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        UPoly m = f.monic();
        out.push_back(F.neg(m.coeff(0)));
        return;
    }
    const std::uint64_t q = F.order();
    for (int attempt = 0; attempt < 256; ++attempt) {
        UPoly h(F);
        if (F.p() != 2) {
            // gcd(f, (X+a)^((q-1)/2) - 1)
            Fq a = F.zero();
            for (int i = 0; i < F.deg(); ++i)
                a.c[static_cast<std::size_t>(i)] =
                    static_cast<coeff_t>(rng.u64() % static_cast<std::uint64_t>(F.p()));
            UPoly shifted(F, std::vector<Fq>{a, F.one()});
            h = powmod(shifted, (q - 1) / 2, f) - UPoly::constant(F, F.one());
        } else {
            // Trace splitting: gcd(f, sum_{i<e} (cX)^(2^i)) for random c.
            int e = F.deg();
            Fq cmul = F.zero();
            for (int i = 0; i < F.deg(); ++i)
                cmul.c[static_cast<std::size_t>(i)] = static_cast<coeff_t>(rng.u64() % 2);
            if (cmul.is_zero()) cmul = F.one();
            UPoly cx(F, std::vector<Fq>{F.zero(), cmul});
            UPoly acc(F);
            UPoly term = cx.mod(f);
            for (int i = 0; i < e; ++i) {
                acc = acc + term;
                term = (term * term).mod(f);
            }
            h = acc;
        }
        UPoly g = gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_linear(g, out, rng);
            split_linear(f.divrem(g).first, out, rng);
            return;
        }
    }
    throw IdentityFailure("equal-degree splitting failed to converge");
}

}  // namespace

std::vector<Fq> roots(const UPoly& f) {
    const Field& F = f.field();
    std::vector<Fq> out;
    if (f.is_zero()) throw Error("roots of the zero polynomial");
    if (f.degree() == 0) return out;

    bool small = true;
    std::uint64_t q = 1;
    for (int i = 0; i < F.deg() && small; ++i) {
        q *= static_cast<std::uint64_t>(F.p());
        if (q > kExhaustiveRootBound) small = false;
    }

    if (small) {
        // Exhaustive search with deflation to capture multiplicity.
        UPoly g = f;
        for (const Fq& a : F.elements()) {
            while (g.degree() >= 1 && g.eval(a).is_zero()) {
                out.push_back(a);
                g = g.deflate(a);
            }
            if (g.degree() < 1) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Frobenius kernel: the product of (X - r) over distinct roots in F.
    UPoly xq = frobenius_powmod_x(F.deg(), f);
    UPoly lin = gcd(xq - UPoly::x(F), f);
    if (lin.degree() <= 0) return out;
    Rng rng(Rng::splitmix(poly_hash(f)));
    std::vector<Fq> distinct;
    split_linear(lin, distinct, rng);
    // Multiplicities by repeated deflation.
    UPoly g = f;
    std::sort(distinct.begin(), distinct.end());
    for (const Fq& r : distinct) {
        while (g.degree() >= 1 && g.eval(r).is_zero()) {
            out.push_back(r);
            g = g.deflate(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int count_distinct_roots(const UPoly& f) {
    const Field& F = f.field();
    if (f.is_zero()) throw Error("roots of the zero polynomial");
    if (f.degree() == 0) return 0;
    UPoly xq = frobenius_powmod_x(F.deg(), f);
    UPoly lin = gcd(xq - UPoly::x(F), f);
    return lin.degree() > 0 ? lin.degree() : 0;
}

// ---------------------------------------------------------------- BForm

BForm::BForm(const Field& F, int d) : F_(&F), c_(static_cast<std::size_t>(d) + 1, F.zero()) {}

BForm::BForm(const Field& F, std::vector<Fq> coeffs) : F_(&F), c_(std::move(coeffs)) {
    for (auto& v : c_)
        if (v.F == nullptr) v = F.zero();
}

bool BForm::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

Fq BForm::eval(const Fq& s, const Fq& t) const {
    // sum c_i s^i t^(d-i)
    const Field& F = *F_;
    Fq r = F.zero();
    Fq spow = F.one();
    std::vector<Fq> tpows(c_.size(), F.one());
    for (std::size_t i = 1; i < c_.size(); ++i) tpows[i] = tpows[i - 1] * t;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r = r + c_[i] * spow * tpows[c_.size() - 1 - i];
        spow = spow * s;
    }
    return r;
}

BForm BForm::deflate_at(const Fq& s0, const Fq& t0) const {
    // Divide by L = t0*s - s0*t. Write b = L * b' and solve for b' by a
    // forward sweep; verify the final carry.
    const Field& F = *F_;
    int d = degree();
    if (d < 1) throw IdentityFailure("deflating a constant form");
    if (!eval(s0, t0).is_zero()) throw IdentityFailure("deflate_at non-root");
    BForm out(F, d - 1);
    if (!t0.is_zero()) {
        // Coefficients from the top: b'_{d-1} ... via c_i = t0*b'_{i-1} - s0*b'_i.
        Fq t0inv = F.inv(t0);
        // c_d = t0 * b'_{d-1}
        Fq cur = c_[static_cast<std::size_t>(d)] * t0inv;
        out.coeff(d - 1) = cur;
        for (int i = d - 1; i >= 1; --i) {
            cur = (c_[static_cast<std::size_t>(i)] + s0 * cur) * t0inv;
            out.coeff(i - 1) = cur;
        }
    } else {
        // L = -s0*t: c_i = -s0 * b'_i.
        Fq fac = F.neg(F.inv(s0));
        for (int i = 0; i <= d - 1; ++i) out.coeff(i) = c_[static_cast<std::size_t>(i)] * fac;
    }
    return out;
}

BForm BForm::divide_exact(const BForm& dv) const {
    const Field& F = *F_;
    int dd = dv.degree();
    // Find the top nonzero of the divisor.
    int top = dd;
    while (top >= 0 && dv.coeff(top).is_zero()) --top;
    if (top < 0) throw IdentityFailure("division by the zero form");
    int d = degree();
    if (d < dd) throw IdentityFailure("form division underflow");
    BForm out(F, d - dd);
    BForm rem = *this;
    Fq linv = F.inv(dv.coeff(top));
    // Treat as polynomials in s with t implicit; eliminate from s^(i) where
    // i runs down. Since the divisor top is at s^top t^(dd-top), quotient
    // coefficient at s^(i-top).
    for (int i = d; i >= top; --i) {
        Fq f = rem.coeff(i) * linv;
        if (f.is_zero()) continue;
        if (i - top > d - dd) throw IdentityFailure("inexact form division");
        out.coeff(i - top) = out.coeff(i - top) + f;
        for (int j = 0; j <= dd; ++j) {
            int idx = i - top + j;
            if (idx > d) {
                if (!dv.coeff(j).is_zero() && !f.is_zero())
                    throw IdentityFailure("inexact form division");
                continue;
            }
            rem.coeff(idx) = rem.coeff(idx) - f * dv.coeff(j);
        }
    }
    if (!rem.is_zero()) throw IdentityFailure("inexact form division");
    return out;
}

std::vector<std::pair<Fq, Fq>> BForm::proj_roots() const {
    const Field& F = *F_;
    if (is_zero()) throw Error("roots of the zero form");
    std::vector<std::pair<Fq, Fq>> out;
    // Root at (1 : 0): multiplicity = number of trailing (in t) zero coeffs,
    // i.e. vanishing of the top s-coefficients.
    int d = degree();
    int mult_inf = 0;
    while (mult_inf <= d && c_[static_cast<std::size_t>(d - mult_inf)].is_zero()) ++mult_inf;
    for (int i = 0; i < mult_inf; ++i) out.emplace_back(F.one(), F.zero());
    // Affine part: f(X) = form(X, 1).
    std::vector<Fq> affine(c_.begin(), c_.end());
    UPoly f(F, std::move(affine));
    if (f.degree() >= 1) {
        for (const Fq& r : roots(f)) out.emplace_back(r, F.one());
    }
    return out;
}

int BForm::count_proj_roots() const {
    const Field& F = *F_;
    if (is_zero()) throw Error("roots of the zero form");
    int d = degree();
    int n = c_[static_cast<std::size_t>(d)].is_zero() ? 1 : 0;
    std::vector<Fq> affine(c_.begin(), c_.end());
    UPoly f(F, std::move(affine));
    if (f.degree() >= 1) n += count_distinct_roots(f);
    return n;
}

BForm gcd(const BForm& a, const BForm& b) {
    const Field& F = a.field();
    // Common s-power (roots at (0:1)) and t-power (roots at (1:0)) are
    // tracked separately; the affine parts go through the UPoly gcd.
    auto split = [&F](const BForm& f, int& s_pow, int& t_pow, UPoly& affine) {
        int d = f.degree();
        int lo = 0;
        while (lo <= d && f.coeff(lo).is_zero()) ++lo;
        int hi = d;
        while (hi >= 0 && f.coeff(hi).is_zero()) --hi;
        s_pow = lo;        // f divisible by s^lo
        t_pow = d - hi;    // f divisible by t^(d-hi)
        std::vector<Fq> cs;
        for (int i = lo; i <= hi; ++i) cs.push_back(f.coeff(i));
        affine = UPoly(F, std::move(cs));
    };
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int as, at, bs, bt;
    UPoly fa(F), fb(F);
    split(a, as, at, fa);
    split(b, bs, bt, fb);
    UPoly g = gcd(fa, fb);
    int s_pow = std::min(as, bs), t_pow = std::min(at, bt);
    std::vector<Fq> cs(static_cast<std::size_t>(s_pow + g.degree() + t_pow) + 1, F.zero());
    for (int i = 0; i <= g.degree(); ++i) cs[static_cast<std::size_t>(s_pow + i)] = g.coeff(i);
    return BForm(F, std::move(cs));
}

}  // namespace fano
