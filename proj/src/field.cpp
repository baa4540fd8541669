#include "fano/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "fano/rng.hpp"
#include "fano/upoly.hpp"

namespace fano {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long mod_inverse(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

}  // namespace

// ---------------------------------------------------------------- Fq basics

bool Fq::is_zero() const {
    for (const auto v : c)
        if (v) return false;
    return true;
}

bool operator==(const Fq& a, const Fq& b) {
    if (a.F != b.F) throw MismatchError("comparing elements of different fields");
    return a.c == b.c;
}

bool operator<(const Fq& a, const Fq& b) {
    if (a.F != b.F) throw MismatchError("ordering elements of different fields");
    return a.c < b.c;
}

Fq Fq::operator+(const Fq& o) const { return F->add(*this, o); }
Fq Fq::operator-(const Fq& o) const { return F->sub(*this, o); }
Fq Fq::operator*(const Fq& o) const { return F->mul(*this, o); }
Fq Fq::operator/(const Fq& o) const { return F->mul(*this, F->inv(o)); }
Fq Fq::operator-() const { return F->neg(*this); }

std::string Fq::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < F->deg(); ++i) {
        if (i) os << ",";
        os << c[static_cast<std::size_t>(i)];
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- registry

struct FieldRegistry {
    std::recursive_mutex mu;
    std::map<std::pair<long, int>, std::unique_ptr<Field>> fields;

    // Embeddings keyed by (p, sub_deg, top_deg); gen_image is the image of the
    // subfield generator inside the top field.
    struct Embedding {
        const Field* sub;
        const Field* top;
        Fq gen_image;
    };
    std::map<std::tuple<long, int, int>, Embedding> embeddings;

    static FieldRegistry& instance() {
        static FieldRegistry r;
        return r;
    }

    const Embedding& get_embedding(const Field& sub, const Field& top);
    Fq apply(const Embedding& e, const Fq& a) const;

  private:
    const Embedding& build_embedding(const Field& sub, const Field& top);
};

const Field& Field::get(long p, int n) {
    if (!is_prime(p)) throw ParseError("characteristic " + std::to_string(p) + " is not prime");
    if (n < 1 || n > kMaxFieldDegree)
        throw ParseError("extension degree " + std::to_string(n) + " out of range");
    auto& reg = FieldRegistry::instance();
    std::lock_guard<std::recursive_mutex> lock(reg.mu);
    auto& slot = reg.fields[{p, n}];
    if (!slot) slot.reset(new Field(p, n));
    return *slot;
}

// ---------------------------------------------------------------- construction

Field::Field(long p, int n) : p_(p), n_(n) {
    if (n == 1) {
        mod_.assign(1, 0);  // modulus t
        return;
    }
    // Lexicographically smallest monic irreducible of degree n: count the
    // non-leading coefficient word (c_{n-1}, ..., c_0) upward and take the
    // first irreducible hit.
    const Field& Fp = Field::get(p, 1);
    std::vector<coeff_t> word(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<Fq> cs(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < n; ++i)
            cs[static_cast<std::size_t>(i)] =
                Fp.from_int(word[static_cast<std::size_t>(n - 1 - i)]);
        cs[static_cast<std::size_t>(n)] = Fp.one();
        UPoly f(Fp, cs);
        if (is_irreducible(f)) {
            mod_.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) mod_[static_cast<std::size_t>(i)] = f.coeff(i).c[0];
            return;
        }
        int i = n - 1;
        while (i >= 0) {
            word[static_cast<std::size_t>(i)]++;
            if (word[static_cast<std::size_t>(i)] < p) break;
            word[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) throw IdentityFailure("no irreducible modulus found");
    }
}

std::uint64_t Field::order() const {
    std::uint64_t q = 1;
    for (int i = 0; i < n_; ++i) {
        if (q > (1ULL << 62) / static_cast<std::uint64_t>(p_))
            throw ResourceBound("field order exceeds 2^62");
        q *= static_cast<std::uint64_t>(p_);
    }
    return q;
}

Fq Field::zero() const {
    Fq a;
    a.F = this;
    return a;
}

Fq Field::one() const { return from_int(1); }

Fq Field::gen() const {
    Fq a = zero();
    if (n_ == 1) throw MismatchError("prime field has no generator over itself");
    a.c[1] = 1;
    return a;
}

Fq Field::from_int(long v) const {
    Fq a = zero();
    long r = v % p_;
    if (r < 0) r += p_;
    a.c[0] = static_cast<coeff_t>(r);
    return a;
}

Fq Field::make(std::span<const coeff_t> coords) const {
    if (static_cast<int>(coords.size()) > n_) throw MismatchError("coordinate vector too long");
    Fq a = zero();
    for (std::size_t i = 0; i < coords.size(); ++i)
        a.c[i] = static_cast<coeff_t>(coords[i] % static_cast<coeff_t>(p_));
    return a;
}

// ---------------------------------------------------------------- arithmetic

Fq Field::add(const Fq& a, const Fq& b) const {
    Fq r = zero();
    for (int i = 0; i < n_; ++i) {
        auto s = static_cast<std::uint32_t>(a.c[static_cast<std::size_t>(i)]) +
                 b.c[static_cast<std::size_t>(i)];
        if (s >= static_cast<std::uint32_t>(p_)) s -= static_cast<std::uint32_t>(p_);
        r.c[static_cast<std::size_t>(i)] = static_cast<coeff_t>(s);
    }
    return r;
}

Fq Field::sub(const Fq& a, const Fq& b) const {
    Fq r = zero();
    for (int i = 0; i < n_; ++i) {
        auto s = static_cast<std::int32_t>(a.c[static_cast<std::size_t>(i)]) -
                 b.c[static_cast<std::size_t>(i)];
        if (s < 0) s += static_cast<std::int32_t>(p_);
        r.c[static_cast<std::size_t>(i)] = static_cast<coeff_t>(s);
    }
    return r;
}

Fq Field::neg(const Fq& a) const { return sub(zero(), a); }

void Field::reduce_once(std::uint64_t* acc) const {
    // acc has length 2n-1; fold degrees 2n-2..n down using the monic modulus.
    const auto P = static_cast<std::uint64_t>(p_);
    for (int i = 2 * n_ - 2; i >= n_; --i) {
        std::uint64_t v = acc[i] % P;
        if (!v) continue;
        acc[i] = 0;
        // t^n = -mod: subtract v * mod[j] from acc[i-n+j].
        for (int j = 0; j < n_; ++j) {
            std::uint64_t m = mod_[static_cast<std::size_t>(j)];
            if (!m) continue;
            std::uint64_t sub_v = (v * m) % P;
            auto& slot = acc[i - n_ + j];
            slot = (slot + P - sub_v) % P;
        }
    }
}

Fq Field::mul(const Fq& a, const Fq& b) const {
    if (a.F != this || b.F != this) throw MismatchError("field element from wrong field");
    if (n_ == 1) {
        Fq r = zero();
        r.c[0] = static_cast<coeff_t>(
            (static_cast<std::uint64_t>(a.c[0]) * b.c[0]) % static_cast<std::uint64_t>(p_));
        return r;
    }
    std::uint64_t acc[2 * kMaxFieldDegree] = {0};
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t ai = a.c[static_cast<std::size_t>(i)];
        if (!ai) continue;
        for (int j = 0; j < n_; ++j)
            acc[i + j] += ai * b.c[static_cast<std::size_t>(j)];
    }
    reduce_once(acc);
    Fq r = zero();
    for (int i = 0; i < n_; ++i)
        r.c[static_cast<std::size_t>(i)] =
            static_cast<coeff_t>(acc[i] % static_cast<std::uint64_t>(p_));
    return r;
}

Fq Field::inv(const Fq& a) const {
    if (a.is_zero()) throw Error("inverse of zero");
    if (n_ == 1) {
        Fq r = zero();
        r.c[0] = static_cast<coeff_t>(mod_inverse(a.c[0], p_));
        return r;
    }
    // Extended Euclid on coefficient vectors over F_p against the modulus.
    auto trim = [](std::vector<long>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    std::vector<long> r0(static_cast<std::size_t>(n_) + 1);
    for (int i = 0; i < n_; ++i) r0[static_cast<std::size_t>(i)] = mod_[static_cast<std::size_t>(i)];
    r0[static_cast<std::size_t>(n_)] = 1;
    std::vector<long> r1(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) r1[static_cast<std::size_t>(i)] = a.c[static_cast<std::size_t>(i)];
    trim(r1);
    std::vector<long> s0{0}, s1{1};
    trim(s0);
    while (!r1.empty()) {
        // long-divide r0 by r1
        std::vector<long> q(r0.size(), 0);
        std::vector<long> rem = r0;
        long lead_inv = mod_inverse(r1.back(), p_);
        while (rem.size() >= r1.size() && !rem.empty()) {
            long factor = (rem.back() * lead_inv) % p_;
            std::size_t shift = rem.size() - r1.size();
            q[shift] = factor;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                long v = (rem[shift + i] - factor * r1[i]) % p_;
                rem[shift + i] = v < 0 ? v + p_ : v;
            }
            trim(rem);
        }
        trim(q);
        // (r0, r1) = (r1, rem); (s0, s1) = (s1, s0 - q*s1)
        std::vector<long> s2(std::max(s0.size(), q.size() + s1.size()), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) {
                long v = (s2[i + j] - q[i] * s1[j]) % p_;
                s2[i + j] = v < 0 ? v + p_ : v;
            }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant gcd; result = s0 / r0.
    long scale = mod_inverse(r0.empty() ? 1 : r0[0], p_);
    Fq out = zero();
    for (std::size_t i = 0; i < s0.size() && i < static_cast<std::size_t>(n_); ++i)
        out.c[i] = static_cast<coeff_t>((s0[i] * scale) % p_);
    return out;
}

Fq Field::pow(const Fq& a, std::uint64_t e) const {
    Fq base = a, r = one();
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fq Field::frobenius(const Fq& a, int times) const {
    Fq r = a;
    for (int i = 0; i < times; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
    return r;
}

bool Field::in_subfield_of_degree(const Fq& a, int d) const {
    return frobenius(a, d) == a;
}

std::vector<Fq> Field::elements() const {
    std::uint64_t q = order();
    std::vector<Fq> out;
    out.reserve(q);
    Fq cur = zero();
    for (std::uint64_t i = 0; i < q; ++i) {
        out.push_back(cur);
        int j = n_ - 1;
        while (j >= 0) {
            auto& digit = cur.c[static_cast<std::size_t>(j)];
            if (++digit < p_) break;
            digit = 0;
            --j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Field::name() const {
    std::uint64_t q = 1;
    for (int i = 0; i < n_; ++i) q *= static_cast<std::uint64_t>(p_);
    return "F_" + std::to_string(q);
}

// ---------------------------------------------------------------- embeddings

Fq FieldRegistry::apply(const Embedding& e, const Fq& a) const {
    // Horner in the generator image.
    const Field& T = *e.top;
    Fq r = T.zero();
    for (int i = e.sub->deg() - 1; i >= 0; --i) {
        r = T.mul(r, e.gen_image);
        r = T.add(r, T.from_int(a.c[static_cast<std::size_t>(i)]));
    }
    return r;
}

const FieldRegistry::Embedding& FieldRegistry::get_embedding(const Field& sub, const Field& top) {
    auto key = std::make_tuple(sub.p(), sub.deg(), top.deg());
    auto it = embeddings.find(key);
    if (it != embeddings.end()) return it->second;
    return build_embedding(sub, top);
}

const FieldRegistry::Embedding& FieldRegistry::build_embedding(const Field& sub, const Field& top) {
    const long p = sub.p();
    const int a = sub.deg(), b = top.deg();
    auto key = std::make_tuple(p, a, b);

    if (a == b) {
        Embedding e{&sub, &top, a == 1 ? top.zero() : top.gen()};
        return embeddings.emplace(key, e).first->second;
    }
    if (a == 1) {
        // Prime field embeds canonically.
        Embedding e{&sub, &top, top.zero()};
        return embeddings.emplace(key, e).first->second;
    }

    // Route through the smallest strict intermediate first, so composite-ratio
    // steps are always compositions and only prime-ratio steps pick roots.
    for (int c = a + 1; c < b; ++c) {
        if (c % a != 0 || b % c != 0) continue;
        const Field& mid = Field::get(p, c);
        const Embedding& lo = get_embedding(sub, mid);
        const Embedding& hi = get_embedding(mid, top);
        Embedding e{&sub, &top, apply(hi, lo.gen_image)};
        return embeddings.emplace(key, e).first->second;
    }

    // Prime-ratio step: choose among the roots of the sub modulus in `top`,
    // filtered by every already-registered triangle through this edge.
    UPoly mod_poly = [&] {
        std::vector<Fq> cs(static_cast<std::size_t>(a) + 1);
        for (int i = 0; i < a; ++i)
            cs[static_cast<std::size_t>(i)] = top.from_int(sub.modulus()[static_cast<std::size_t>(i)]);
        cs[static_cast<std::size_t>(a)] = top.one();
        return UPoly(top, cs);
    }();
    std::vector<Fq> cands = roots(mod_poly);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (cands.empty()) throw IdentityFailure("modulus has no root in extension");

    auto satisfies = [&](const Fq& r) {
        Embedding trial{&sub, &top, r};
        for (auto& [k, e] : embeddings) {
            auto [kp, kd, kt] = k;
            if (kp != p) continue;
            // Triangle below: d | a with maps d->a and d->b registered.
            if (kt == a && a % kd == 0) {
                auto low = embeddings.find(std::make_tuple(p, kd, b));
                if (low != embeddings.end()) {
                    if (!(apply(trial, e.gen_image) == low->second.gen_image)) return false;
                }
            }
            // Triangle above: b | t with maps a->t and b->t registered.
            if (kd == b) {
                auto diag = embeddings.find(std::make_tuple(p, a, kt));
                if (diag != embeddings.end()) {
                    const Field& big = Field::get(p, kt);
                    Fq via = big.zero();
                    {
                        // apply e (b->t) to the trial image of the sub generator
                        Fq img = trial.gen_image;
                        Fq acc = big.zero();
                        for (int i = b - 1; i >= 0; --i) {
                            acc = big.mul(acc, e.gen_image);
                            acc = big.add(acc, big.from_int(img.c[static_cast<std::size_t>(i)]));
                        }
                        via = acc;
                    }
                    if (!(via == diag->second.gen_image)) return false;
                }
            }
        }
        return true;
    };

    for (const Fq& r : cands) {
        if (satisfies(r)) {
            Embedding e{&sub, &top, r};
            return embeddings.emplace(key, e).first->second;
        }
    }
    throw IdentityFailure("no compatible embedding root");
}

Fq Field::embed(const Fq& a, const Field& top) const {
    if (a.F != this) throw MismatchError("embed: element not of this field");
    if (&top == this) return a;
    if (top.p() != p_ || top.deg() % n_ != 0)
        throw MismatchError("embed: " + name() + " is not a subfield of " + top.name());
    auto& reg = FieldRegistry::instance();
    std::lock_guard<std::recursive_mutex> lock(reg.mu);
    const auto& e = reg.get_embedding(*this, top);
    return reg.apply(e, a);
}

Fq Field::descend(const Fq& a, const Field& sub) const {
    if (a.F != this) throw MismatchError("descend: element not of this field");
    if (&sub == this) return a;
    if (sub.p() != p_ || n_ % sub.deg() != 0)
        throw MismatchError("descend: not a subfield");
    // Solve the F_p-linear system img_matrix * x = a where column j is the
    // image of the subfield basis element t^j.
    const int k = sub.deg();
    std::vector<Fq> basis_img(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        Fq e = sub.zero();
        e.c[static_cast<std::size_t>(j)] = 1;
        basis_img[static_cast<std::size_t>(j)] = sub.embed(e, *this);
    }
    // Gaussian elimination over F_p on an n x (k+1) augmented matrix.
    const int n = n_;
    std::vector<std::vector<long>> m(static_cast<std::size_t>(n),
                                     std::vector<long>(static_cast<std::size_t>(k) + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                basis_img[static_cast<std::size_t>(j)].c[static_cast<std::size_t>(i)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            a.c[static_cast<std::size_t>(i)];
    }
    int row = 0;
    std::vector<int> pivot_col(static_cast<std::size_t>(k), -1);
    for (int col = 0; col < k && row < n; ++col) {
        int pr = -1;
        for (int i = row; i < n; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] % p_ != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(row)], m[static_cast<std::size_t>(pr)]);
        long inv_l = mod_inverse(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p_);
        for (int j = col; j <= k; ++j) {
            auto& v = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
            v = (v * inv_l) % p_;
            if (v < 0) v += p_;
        }
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            long f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] % p_;
            if (!f) continue;
            for (int j = col; j <= k; ++j) {
                long v = (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                          f * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)]) % p_;
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v < 0 ? v + p_ : v;
            }
        }
        pivot_col[static_cast<std::size_t>(col)] = row;
        ++row;
    }
    // Consistency: all rows beyond the pivots must be zero.
    for (int i = row; i < n; ++i)
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] % p_ != 0)
            throw MismatchError("descend: element not in subfield");
    Fq out = sub.zero();
    for (int j = 0; j < k; ++j) {
        int pr = pivot_col[static_cast<std::size_t>(j)];
        if (pr >= 0)
            out.c[static_cast<std::size_t>(j)] = static_cast<coeff_t>(
                m[static_cast<std::size_t>(pr)][static_cast<std::size_t>(k)]);
    }
    // Verify round trip.
    if (!(sub.embed(out, *this) == a)) throw MismatchError("descend: element not in subfield");
    return out;
}

}  // namespace fano
