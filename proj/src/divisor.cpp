#include "fano/divisor.hpp"

#include <cctype>
#include <sstream>

namespace fano {

// ---------------------------------------------------------------- NSClass

NSClass operator+(const NSClass& a, const NSClass& b) {
    if (a.genus != b.genus) throw MismatchError("NS classes of different genus");
    return {a.genus, a.x + b.x, a.half_delta + b.half_delta};
}

NSClass operator-(const NSClass& a, const NSClass& b) {
    if (a.genus != b.genus) throw MismatchError("NS classes of different genus");
    return {a.genus, a.x - b.x, a.half_delta - b.half_delta};
}

long pairing(const NSClass& a, const NSClass& b) {
    if (a.genus != b.genus) throw MismatchError("pairing across different genus");
    return a.x * b.x + (a.x * b.half_delta + b.x * a.half_delta) +
           static_cast<long>(1 - a.genus) * a.half_delta * b.half_delta;
}

NSClass trace_class(long d, int genus) {
    if (d < 0) throw ParseError("trace class of negative degree");
    return {genus, d, -1};
}

std::string NSClass::str() const {
    std::ostringstream os;
    os << x << "*x + " << half_delta << "*(delta/2)";
    return os.str();
}

// ---------------------------------------------------------------- CurveDivisor

CurveDivisor CurveDivisor::point(const std::string& name) {
    CurveDivisor d;
    d.pts_[name] = 1;
    return d;
}

CurveDivisor CurveDivisor::d1() {
    CurveDivisor d;
    d.d1_ = 1;
    return d;
}

CurveDivisor CurveDivisor::d2() {
    CurveDivisor d;
    d.d1_ = -1;
    d.k_ = 1;
    return d;
}

CurveDivisor CurveDivisor::canonical() {
    CurveDivisor d;
    d.k_ = 1;
    return d;
}

CurveDivisor CurveDivisor::operator+(const CurveDivisor& o) const {
    CurveDivisor d = *this;
    d.d1_ += o.d1_;
    d.k_ += o.k_;
    for (const auto& [name, c] : o.pts_) {
        auto& slot = d.pts_[name];
        slot += c;
        if (!slot) d.pts_.erase(name);
    }
    return d;
}

CurveDivisor CurveDivisor::operator-(const CurveDivisor& o) const { return *this + o.scaled(-1); }

CurveDivisor CurveDivisor::scaled(long kk) const {
    CurveDivisor d;
    if (!kk) return d;
    d.d1_ = d1_ * kk;
    d.k_ = k_ * kk;
    for (const auto& [name, c] : pts_) d.pts_[name] = c * kk;
    return d;
}

bool CurveDivisor::is_zero() const { return pts_.empty() && !d1_ && !k_; }

long CurveDivisor::degree() const {
    long deg = 3 * d1_ + 6 * k_;
    for (const auto& [name, c] : pts_) deg += c;
    return deg;
}

std::string CurveDivisor::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long c, const std::string& sym) {
        if (!c) return;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        long a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << sym;
        first = false;
    };
    emit(k_, "K");
    emit(d1_, "D1");
    for (const auto& [name, c] : pts_) emit(c, name);
    if (first) return "0";
    return os.str();
}

// ---------------------------------------------------------------- Sym2Divisor

Sym2Divisor Sym2Divisor::x_point(const std::string& p) {
    Sym2Divisor e;
    e.xpts_[p] = 1;
    return e;
}

Sym2Divisor Sym2Divisor::half_delta() {
    Sym2Divisor e;
    e.half_delta_ = 1;
    return e;
}

Sym2Divisor Sym2Divisor::trace(const CurveDivisor& system) {
    Sym2Divisor e;
    e.traces_.emplace_back(system, 1);
    return e;
}

Sym2Divisor Sym2Divisor::s_of(const CurveDivisor& a) {
    Sym2Divisor e;
    e.s_d1_ = a.coeff_d1();
    e.s_k_ = a.coeff_k();
    for (const auto& [name, c] : a.points()) e.xpts_[name] = c;
    return e;
}

Sym2Divisor Sym2Divisor::operator+(const Sym2Divisor& o) const {
    Sym2Divisor e = *this;
    e.s_d1_ += o.s_d1_;
    e.s_k_ += o.s_k_;
    e.half_delta_ += o.half_delta_;
    for (const auto& [name, c] : o.xpts_) {
        auto& slot = e.xpts_[name];
        slot += c;
        if (!slot) e.xpts_.erase(name);
    }
    for (const auto& t : o.traces_) e.traces_.push_back(t);
    return e;
}

Sym2Divisor Sym2Divisor::operator-(const Sym2Divisor& o) const { return *this + o.scaled(-1); }

Sym2Divisor Sym2Divisor::scaled(long k) const {
    Sym2Divisor e;
    if (!k) return e;
    e.s_d1_ = s_d1_ * k;
    e.s_k_ = s_k_ * k;
    e.half_delta_ = half_delta_ * k;
    for (const auto& [name, c] : xpts_) e.xpts_[name] = c * k;
    for (const auto& [sys, c] : traces_) e.traces_.emplace_back(sys, c * k);
    return e;
}

Sym2Divisor Sym2Divisor::reduce() const {
    // T_A -> S_A - delta/2, applied to every pending trace.
    Sym2Divisor e = *this;
    std::vector<std::pair<CurveDivisor, long>> traces;
    traces.swap(e.traces_);
    for (const auto& [sys, c] : traces) {
        Sym2Divisor s = s_of(sys).scaled(c);
        s.half_delta_ -= c;
        e = e + s;
    }
    return e;
}

bool Sym2Divisor::is_zero_reduced() const {
    Sym2Divisor e = reduce();
    return e.xpts_.empty() && !e.s_d1_ && !e.s_k_ && !e.half_delta_;
}

NSClass Sym2Divisor::ns_class(int genus) const {
    NSClass c{genus, 0, 0};
    c.x = s_d1_ * 3 + s_k_ * 6;
    for (const auto& [name, cc] : xpts_) c.x += cc;
    c.half_delta = half_delta_;
    for (const auto& [sys, cc] : traces_) {
        c.x += sys.degree() * cc;
        c.half_delta -= cc;
    }
    return c;
}

bool lin_equiv(const Sym2Divisor& a, const Sym2Divisor& b) { return (a - b).is_zero_reduced(); }

std::string Sym2Divisor::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long c, const std::string& sym) {
        if (!c) return;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        long a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << sym;
        first = false;
    };
    emit(s_k_, "S(K)");
    emit(s_d1_, "S(D1)");
    for (const auto& [name, c] : xpts_) emit(c, "X[" + name + "]");
    emit(half_delta_, "Delta/2");
    for (const auto& [sys, c] : traces_) emit(c, "Trace(" + sys.str() + ")");
    if (first) return "0";
    return os.str();
}

CurveDivisor Sym2Divisor::inclusion_pullback(const std::string& p) const {
    CurveDivisor out;
    // S_A -> A on the reduced part
    out = out + CurveDivisor::d1().scaled(s_d1_) + CurveDivisor::canonical().scaled(s_k_);
    for (const auto& [name, c] : xpts_) out = out + CurveDivisor::point(name).scaled(c);
    // delta/2 -> p
    out = out + CurveDivisor::point(p).scaled(half_delta_);
    // T_A -> A - p
    for (const auto& [sys, c] : traces_)
        out = out + (sys - CurveDivisor::point(p)).scaled(c);
    return out;
}

CurveDivisor Sym2Divisor::ruling_pullback(int i) const {
    if (i != 1 && i != 2) throw ParseError("ruling index must be 1 or 2");
    Sym2Divisor e = reduce();
    CurveDivisor di = i == 1 ? CurveDivisor::d1() : CurveDivisor::d2();
    CurveDivisor out;
    // S_A -> deg(A)*D_i - A, linearly in A.
    auto pull_s = [&](const CurveDivisor& a, long c) {
        if (!c) return;
        out = out + (di.scaled(a.degree()) - a).scaled(c);
    };
    pull_s(CurveDivisor::d1(), e.s_d1_);
    pull_s(CurveDivisor::canonical(), e.s_k_);
    for (const auto& [name, c] : e.xpts_) pull_s(CurveDivisor::point(name), c);
    // delta/2 -> 4 D_i - K.
    out = out + (di.scaled(4) - CurveDivisor::canonical()).scaled(e.half_delta_);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "' in expression");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer");
        return std::stol(s.substr(start, i - start));
    }
    std::string ident() {
        skip_ws();
        std::size_t start = i;
        if (i >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            throw ParseError("expected identifier");
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return s.substr(start, i - start);
    }
};

CurveDivisor parse_dexpr(Cursor& c, char stop) {
    CurveDivisor out;
    long sign = 1;
    if (c.accept('-')) sign = -1;
    for (;;) {
        long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = c.integer();
            c.accept('*');
        }
        std::string name = c.ident();
        CurveDivisor sym;
        if (name == "D1")
            sym = CurveDivisor::d1();
        else if (name == "D2")
            sym = CurveDivisor::d2();
        else if (name == "K")
            sym = CurveDivisor::canonical();
        else
            sym = CurveDivisor::point(name);
        out = out + sym.scaled(sign * coeff);
        if (c.accept('+'))
            sign = 1;
        else if (c.accept('-'))
            sign = -1;
        else
            break;
    }
    if (c.peek() != stop && stop != '\0')
        throw ParseError("unexpected token in divisor expression");
    return out;
}

}  // namespace

CurveDivisor parse_curve_divisor(const std::string& text) {
    Cursor c{text};
    CurveDivisor d = parse_dexpr(c, '\0');
    if (!c.eof()) throw ParseError("trailing input in divisor expression");
    return d;
}

Sym2Divisor parse_sym2_expr(const std::string& text) {
    Cursor c{text};
    Sym2Divisor out;
    long sign = 1;
    if (c.accept('-')) sign = -1;
    for (;;) {
        long coeff = 1;
        bool saw_number = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = c.integer();
            saw_number = true;
            c.accept('*');
        }
        Sym2Divisor atom;
        if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
            std::string head = c.ident();
            if (head == "Delta") {
                c.expect('/');
                if (c.integer() != 2) throw ParseError("only Delta/2 is a generator");
                atom = Sym2Divisor::half_delta();
            } else if (head == "Trace") {
                c.expect('(');
                atom = Sym2Divisor::trace(parse_dexpr(c, ')'));
                c.expect(')');
            } else if (head == "X") {
                c.expect('[');
                atom = Sym2Divisor::x_point(c.ident());
                c.expect(']');
            } else if (head == "S") {
                c.expect('(');
                atom = Sym2Divisor::s_of(parse_dexpr(c, ')'));
                c.expect(')');
            } else {
                throw ParseError("unknown generator '" + head + "'");
            }
        } else if (saw_number) {
            if (coeff != 0) throw ParseError("nonzero constant term in divisor expression");
            atom = Sym2Divisor{};
        } else {
            throw ParseError("expected a term");
        }
        out = out + atom.scaled(sign * coeff);
        if (c.accept('+'))
            sign = 1;
        else if (c.accept('-'))
            sign = -1;
        else
            break;
    }
    if (!c.eof()) throw ParseError("trailing input in expression");
    return out;
}

}  // namespace fano
