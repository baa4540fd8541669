#include "fano/graded_ring.hpp"

#include <cctype>
#include <sstream>

#include "fano/errors.hpp"

namespace fano {

GradedClass::GradedClass(int genus) : g_(genus) {
    if (genus < 1 || genus > 32) throw ParseError("genus out of range");
    c_.assign(static_cast<std::size_t>(2 * (genus + 1)), Rational(0));
}

const Rational& GradedClass::coeff(int i, int j) const {
    return c_[static_cast<std::size_t>(2 * i + j)];
}

void GradedClass::set(int i, int j, const Rational& v) {
    if (i < 0 || i > g_ || j < 0 || j > 1) throw ParseError("monomial outside the ring");
    c_[static_cast<std::size_t>(2 * i + j)] = v;
}

GradedClass GradedClass::one(int genus) {
    GradedClass a(genus);
    a.set(0, 0, Rational(1));
    return a;
}

GradedClass GradedClass::xi(int genus) {
    GradedClass a(genus);
    a.set(1, 0, Rational(1));
    return a;
}

GradedClass GradedClass::eta(int genus) {
    GradedClass a(genus);
    a.set(0, 1, Rational(1));
    return a;
}

GradedClass GradedClass::operator+(const GradedClass& o) const {
    if (g_ != o.g_) throw MismatchError("graded classes of different genus");
    GradedClass r(g_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

GradedClass GradedClass::operator-(const GradedClass& o) const {
    if (g_ != o.g_) throw MismatchError("graded classes of different genus");
    GradedClass r(g_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

GradedClass GradedClass::operator*(const GradedClass& o) const {
    if (g_ != o.g_) throw MismatchError("graded classes of different genus");
    GradedClass r(g_);
    for (int i1 = 0; i1 <= g_; ++i1)
        for (int j1 = 0; j1 <= 1; ++j1) {
            if (coeff(i1, j1).is_zero()) continue;
            for (int i2 = 0; i2 + i1 <= g_; ++i2)
                for (int j2 = 0; j1 + j2 <= 1; ++j2) {
                    if (o.coeff(i2, j2).is_zero()) continue;
                    r.set(i1 + i2, j1 + j2,
                          r.coeff(i1 + i2, j1 + j2) + coeff(i1, j1) * o.coeff(i2, j2));
                }
        }
    return r;
}

GradedClass GradedClass::scaled(const Rational& s) const {
    GradedClass r(g_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

GradedClass GradedClass::power(int n) const {
    if (n < 0) throw ParseError("negative power in the graded ring");
    GradedClass r = one(g_);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

bool GradedClass::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

bool operator==(const GradedClass& a, const GradedClass& b) {
    return a.g_ == b.g_ && a.c_ == b.c_;
}

std::vector<Rational> GradedClass::fiber_push() const {
    std::vector<Rational> out(static_cast<std::size_t>(g_) + 1, Rational(0));
    for (int i = 0; i <= g_; ++i) out[static_cast<std::size_t>(i)] = coeff(i, 1);
    return out;
}

GradedClass GradedClass::base_pull(int genus, const std::vector<Rational>& xi_poly) {
    GradedClass r(genus);
    for (std::size_t i = 0; i < xi_poly.size(); ++i) {
        if (static_cast<int>(i) > genus) {
            if (!xi_poly[i].is_zero()) throw ParseError("xi-degree beyond truncation");
            continue;
        }
        r.set(static_cast<int>(i), 0, xi_poly[i]);
    }
    return r;
}

std::string GradedClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= g_; ++i)
        for (int j = 0; j <= 1; ++j) {
            const Rational& v = coeff(i, j);
            if (v.is_zero()) continue;
            if (!first) os << " + ";
            os << v.str();
            if (i) os << "*xi^" << i;
            if (j) os << "*eta";
            first = false;
        }
    if (first) return "0";
    return os.str();
}

namespace {
Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r = r * Rational(i);
    return r;
}
}  // namespace

bool verify_curve_bundle_class(int genus) {
    const int g = genus;
    GradedClass lhs =
        (GradedClass::xi(g) + GradedClass::eta(g)).power(g).scaled(Rational(1) / factorial(g));
    GradedClass point = GradedClass::xi(g).power(g).scaled(Rational(1) / factorial(g));
    GradedClass curve =
        GradedClass::xi(g).power(g - 1).scaled(Rational(1) / factorial(g - 1));
    GradedClass rhs = point + curve * GradedClass::eta(g);
    return lhs == rhs;
}

bool verify_sym2_bundle_class() {
    const int g = 4;
    GradedClass lhs =
        (GradedClass::xi(g) + GradedClass::eta(g)).power(3).scaled(Rational(1) / factorial(3));
    GradedClass curve_class = GradedClass::xi(g).power(3).scaled(Rational(1) / factorial(3));
    GradedClass half_pontryagin = GradedClass::xi(g).power(2).scaled(Rational(1) / factorial(2));
    GradedClass rhs = curve_class + half_pontryagin * GradedClass::eta(g);
    return lhs == rhs;
}

GlueingClasses glueing_divisor_classes(int genus) {
    GradedClass eta = GradedClass::eta(genus);
    return {eta, eta,
            "T2 = eta - q^*(L) with L algebraically trivial; equality with eta holds "
            "up to algebraic equivalence only (derived rule)"};
}

// ---------------------------------------------------------------- parsing

namespace {

struct RCursor {
    const std::string& s;
    std::size_t i = 0;
    int g;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    GradedClass expr() {
        GradedClass r = term();
        for (;;) {
            if (accept('+'))
                r = r + term();
            else if (accept('-'))
                r = r - term();
            else
                return r;
        }
    }

    GradedClass term() {
        GradedClass r = factor();
        for (;;) {
            if (accept('*')) {
                r = r * factor();
            } else if (accept('/')) {
                long long d = integer();
                r = r.scaled(Rational(1, d));
            } else {
                return r;
            }
        }
    }

    GradedClass factor() {
        GradedClass base = atom();
        if (accept('^')) {
            long long e = integer();
            base = base.power(static_cast<int>(e));
        }
        return base;
    }

    GradedClass atom() {
        skip();
        if (accept('(')) {
            GradedClass r = expr();
            if (!accept(')')) throw ParseError("missing ')'");
            return r;
        }
        if (accept('-')) return GradedClass::zero(g) - atom();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            long long v = integer();
            return GradedClass::one(g).scaled(Rational(v));
        }
        if (s.compare(i, 2, "xi") == 0) {
            i += 2;
            return GradedClass::xi(g);
        }
        if (s.compare(i, 3, "eta") == 0) {
            i += 3;
            return GradedClass::eta(g);
        }
        throw ParseError("expected xi, eta, a number or '('");
    }

    long long integer() {
        skip();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer");
        return std::stoll(s.substr(start, i - start));
    }
};

}  // namespace

GradedClass parse_graded_expr(const std::string& text, int genus) {
    RCursor c{text, 0, genus};
    GradedClass r = c.expr();
    c.skip();
    if (c.i != text.size()) throw ParseError("trailing input in ring expression");
    return r;
}

}  // namespace fano
