#include "dissect/scalar.hpp"
#include <cstdio>

#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <vector>

namespace dissect {
namespace detail {

// Dyadic floats m * 2^e: exact add/sub/mul without any gcd normalisation,
// directed rounding for div and sqrt. The workhorse of interval refinement.
struct Dyadic {
    BigInt m;
    long e = 0;
};

namespace {

BigInt isqrt_floor(const BigInt& n) { return boost::multiprecision::sqrt(n); }

BigInt isqrt_ceil(const BigInt& n) {
    BigInt r = isqrt_floor(n);
    if (r * r < n) ++r;
    return r;
}

// floor(m / 2^k) for k >= 0, correct for negative m.
BigInt floor_shift(const BigInt& m, long k) {
    if (k <= 0) return m << (-k);
    if (m >= 0) return m >> k;
    BigInt mask = (BigInt(1) << k) - 1;
    return -((-m + mask) >> k);
}

BigInt ceil_shift(const BigInt& m, long k) { return -floor_shift(-m, k); }

void dy_normalize(Dyadic& a) {
    if (a.m == 0) {
        a.e = 0;
        return;
    }
    unsigned long k = boost::multiprecision::lsb(abs(a.m));
    if (k > 0) {
        a.m >>= k;
        a.e += static_cast<long>(k);
    }
}

Dyadic dy_make(BigInt m, long e) {
    Dyadic d{std::move(m), e};
    dy_normalize(d);
    return d;
}

Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
    if (a.m == 0) return b;
    if (b.m == 0) return a;
    long e = std::min(a.e, b.e);
    return dy_make((a.m << (a.e - e)) + (b.m << (b.e - e)), e);
}

Dyadic dy_neg(const Dyadic& a) { return Dyadic{-a.m, a.e}; }
Dyadic dy_sub(const Dyadic& a, const Dyadic& b) { return dy_add(a, dy_neg(b)); }
Dyadic dy_mul(const Dyadic& a, const Dyadic& b) { return dy_make(a.m * b.m, a.e + b.e); }

int dy_cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.m.sign(), sb = b.m.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    long e = std::min(a.e, b.e);
    BigInt x = a.m << (a.e - e), y = b.m << (b.e - e);
    return x < y ? -1 : x > y ? 1 : 0;
}

// Round onto the 2^-p grid.
Dyadic dy_floor_p(const Dyadic& a, long p) {
    if (a.e >= -p) return a;
    return dy_make(floor_shift(a.m, -p - a.e), -p);
}

Dyadic dy_ceil_p(const Dyadic& a, long p) {
    if (a.e >= -p) return a;
    return dy_make(ceil_shift(a.m, -p - a.e), -p);
}

// Directed-rounding quotients on the 2^-p grid; b != 0.
Dyadic dy_div(const Dyadic& a, const Dyadic& b, long p, bool up) {
    long t = a.e + p - b.e;
    BigInt num, den;
    if (t >= 0) {
        num = a.m << t;
        den = b.m;
    } else {
        num = a.m;
        den = b.m << (-t);
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt q = num / den;
    if (!up && q * den > num) --q;  // floor
    if (up && q * den < num) ++q;   // ceil
    return dy_make(std::move(q), -p);
}

Dyadic dy_sqrt(const Dyadic& a, long p, bool up) {
    if (a.m <= 0) return dy_make(BigInt(0), 0);
    long t = a.e + 2 * p;
    if (up) {
        BigInt n = t >= 0 ? a.m << t : ceil_shift(a.m, -t);
        return dy_make(isqrt_ceil(n), -p);
    }
    BigInt n = t >= 0 ? a.m << t : floor_shift(a.m, -t);
    return dy_make(isqrt_floor(n), -p);
}

Dyadic dy_from_rational(const Rational& r, long p, bool up) {
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);  // > 0
    BigInt scaled = num << p;
    BigInt q = scaled / den;
    if (!up && q * den > scaled) --q;
    if (up && q * den < scaled) ++q;
    return dy_make(std::move(q), -p);
}

Rational dy_to_rational(const Dyadic& a) {
    if (a.e >= 0) return Rational(a.m << a.e, 1);
    return Rational(a.m, BigInt(1) << (-a.e));
}

}  // namespace

enum class Op { Leaf, Add, Sub, Mul, Div, Sqrt };

struct Node {
    Op op = Op::Leaf;
    Rational leaf;
    std::shared_ptr<const Node> a, b;

    // BFMSS-style conjugate bounds, tracked as saturating upper bounds on
    // log2(u) and log2(l): |xi| <= 2^bf_u over all conjugates of the
    // algebraic-integer numerator, |eta| <= 2^bf_l for the denominator.
    // One spare bit per operation swallows the floating rounding.
    double bf_u = 0, bf_l = 0;

    mutable std::mutex mu;
    mutable long cache_prec = -1;
    mutable Dyadic cache_lo, cache_hi;
    mutable std::optional<int> cached_sign;
    mutable std::string cached_key;
};

namespace {

std::mutex intern_mu;
std::map<Rational, std::weak_ptr<Node>> leaf_table;
std::map<std::tuple<int, const Node*, const Node*>, std::weak_ptr<Node>> op_table;

double log2_int_upper(const BigInt& n) {
    if (n == 0) return 0;
    return static_cast<double>(boost::multiprecision::msb(abs(n))) + 1;
}

double sat(double x) { return std::min(x, 1e15); }

std::shared_ptr<const Node> make_leaf(const Rational& v) {
    std::lock_guard<std::mutex> lk(intern_mu);
    auto it = leaf_table.find(v);
    if (it != leaf_table.end()) {
        if (auto sp = it->second.lock()) return sp;
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Leaf;
    n->leaf = v;
    n->bf_u = log2_int_upper(boost::multiprecision::numerator(v));
    n->bf_l = log2_int_upper(boost::multiprecision::denominator(v));
    leaf_table[v] = n;
    return n;
}

std::shared_ptr<const Node> make_op(Op op, std::shared_ptr<const Node> a,
                                    std::shared_ptr<const Node> b) {
    std::lock_guard<std::mutex> lk(intern_mu);
    auto key = std::make_tuple(static_cast<int>(op), a.get(), b.get());
    auto it = op_table.find(key);
    if (it != op_table.end()) {
        if (auto sp = it->second.lock()) return sp;
    }
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    switch (op) {
        case Op::Add:
        case Op::Sub:
            n->bf_u = sat(std::max(n->a->bf_u + n->b->bf_l, n->b->bf_u + n->a->bf_l) + 2);
            n->bf_l = sat(n->a->bf_l + n->b->bf_l + 1);
            break;
        case Op::Mul:
            n->bf_u = sat(n->a->bf_u + n->b->bf_u + 1);
            n->bf_l = sat(n->a->bf_l + n->b->bf_l + 1);
            break;
        case Op::Div:
            n->bf_u = sat(n->a->bf_u + n->b->bf_l + 1);
            n->bf_l = sat(n->a->bf_l + n->b->bf_u + 1);
            break;
        case Op::Sqrt:
            if (n->a->bf_u >= n->a->bf_l) {
                n->bf_u = sat((n->a->bf_u + n->a->bf_l) / 2 + 1);
                n->bf_l = n->a->bf_l;
            } else {
                n->bf_u = n->a->bf_u;
                n->bf_l = sat((n->a->bf_u + n->a->bf_l) / 2 + 1);
            }
            break;
        case Op::Leaf:
            break;
    }
    op_table[key] = n;
    return n;
}

struct Interval {
    Dyadic lo, hi;
};

Interval refine(const Node* n, long p);

Interval refine_raw(const Node* n, long p) {
    switch (n->op) {
        case Op::Leaf:
            return {dy_from_rational(n->leaf, p, false), dy_from_rational(n->leaf, p, true)};
        case Op::Add: {
            Interval x = refine(n->a.get(), p), y = refine(n->b.get(), p);
            return {dy_add(x.lo, y.lo), dy_add(x.hi, y.hi)};
        }
        case Op::Sub: {
            Interval x = refine(n->a.get(), p), y = refine(n->b.get(), p);
            return {dy_sub(x.lo, y.hi), dy_sub(x.hi, y.lo)};
        }
        case Op::Mul: {
            Interval x = refine(n->a.get(), p), y = refine(n->b.get(), p);
            Dyadic c[4] = {dy_mul(x.lo, y.lo), dy_mul(x.lo, y.hi), dy_mul(x.hi, y.lo),
                           dy_mul(x.hi, y.hi)};
            Interval out{c[0], c[0]};
            for (int i = 1; i < 4; i++) {
                if (dy_cmp(c[i], out.lo) < 0) out.lo = c[i];
                if (dy_cmp(c[i], out.hi) > 0) out.hi = c[i];
            }
            return out;
        }
        case Op::Div: {
            Interval x = refine(n->a.get(), p);
            long q = p;
            Interval y = refine(n->b.get(), q);
            while (y.lo.m.sign() <= 0 && y.hi.m.sign() >= 0) {  // divisor nonzero: sharpen
                q *= 2;
                y = refine(n->b.get(), q);
            }
            Interval out;
            bool first = true;
            for (const Dyadic* xv : {&x.lo, &x.hi})
                for (const Dyadic* yv : {&y.lo, &y.hi}) {
                    Dyadic down = dy_div(*xv, *yv, p, false);
                    Dyadic up = dy_div(*xv, *yv, p, true);
                    if (first || dy_cmp(down, out.lo) < 0) out.lo = down;
                    if (first || dy_cmp(up, out.hi) > 0) out.hi = up;
                    first = false;
                }
            return out;
        }
        case Op::Sqrt: {
            Interval x = refine(n->a.get(), p);
            if (x.lo.m.sign() < 0) x.lo = Dyadic{};  // operand is known nonnegative
            return {dy_sqrt(x.lo, p, false), dy_sqrt(x.hi, p, true)};
        }
    }
    return {};
}

Interval refine(const Node* n, long p) {
    {
        std::lock_guard<std::mutex> lk(n->mu);
        if (n->cache_prec >= p) return {n->cache_lo, n->cache_hi};
    }
    Interval iv = refine_raw(n, p);
    iv.lo = dy_floor_p(iv.lo, p);
    iv.hi = dy_ceil_p(iv.hi, p);
    std::lock_guard<std::mutex> lk(n->mu);
    if (n->cache_prec >= 0) {
        // Keep enclosures nested: intersect with the previous one.
        if (dy_cmp(n->cache_lo, iv.lo) > 0) iv.lo = n->cache_lo;
        if (dy_cmp(n->cache_hi, iv.hi) < 0) iv.hi = n->cache_hi;
    }
    n->cache_prec = p;
    n->cache_lo = iv.lo;
    n->cache_hi = iv.hi;
    return iv;
}

long count_radicals(const Node* n) {
    std::set<const Node*> seen;
    long radicals = 0;
    std::vector<const Node*> stack{n};
    while (!stack.empty()) {
        const Node* cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        if (cur->op == Op::Sqrt) radicals++;
        if (cur->a) stack.push_back(cur->a.get());
        if (cur->b) stack.push_back(cur->b.get());
    }
    return radicals;
}

// Number of bits b such that 0 < |E| implies |E| >= 2^-b (BFMSS bound
// |E| >= u^(1-D) / l with D = 2^{#radicals}).
long separation_bits(const Node* n) {
    long s = count_radicals(n);
    if (s > 40) throw domain_error("separation bound out of reach: too many distinct radicals");
    double D = static_cast<double>(1LL << s);
    double bits = (D - 1) * std::max(n->bf_u, 0.0) + std::max(n->bf_l, 0.0) + 2;
    if (bits > 2e9) throw domain_error("separation bound out of reach");
    return static_cast<long>(std::max(bits, 4.0)) + 1;
}

}  // namespace
}  // namespace detail

using detail::make_leaf;
using detail::make_op;
using detail::Node;
using detail::Op;

// Every Scalar keeps divisions floated to the root: a node is either a
// division-free DAG or a single Div over two division-free DAGs with a
// positive denominator. Arithmetic below maintains the invariant; it keeps
// the separation bounds of sign predicates small and lets sign() skip the
// denominator entirely.
using NodePtr = std::shared_ptr<const Node>;

namespace {

int known_sign(const NodePtr& n);  // forward (uses Scalar::sign)

NodePtr num_of(const NodePtr& n) { return n->op == Op::Div ? n->a : n; }
NodePtr den_of(const NodePtr& n) { return n->op == Op::Div ? n->b : nullptr; }

bool is_leaf(const NodePtr& n) { return n && n->op == Op::Leaf; }

NodePtr combine(Op op, const NodePtr& a, const NodePtr& b) {
    if (is_leaf(a) && is_leaf(b)) {
        switch (op) {
            case Op::Add: return make_leaf(a->leaf + b->leaf);
            case Op::Sub: return make_leaf(a->leaf - b->leaf);
            case Op::Mul: return make_leaf(a->leaf * b->leaf);
            default: break;
        }
    }
    return make_op(op, a, b);
}

// nullptr denominators mean 1.
NodePtr mul_opt(const NodePtr& a, const NodePtr& b) {
    if (!a) return b;
    if (!b) return a;
    return combine(Op::Mul, a, b);
}

NodePtr negate_node(const NodePtr& n) {
    if (is_leaf(n)) return make_leaf(-n->leaf);
    return make_op(Op::Sub, make_leaf(Rational(0)), n);
}

Scalar make_quotient(NodePtr num, NodePtr den) {
    if (!den || (is_leaf(den) && den->leaf == 1)) return Scalar(std::move(num));
    int ds = known_sign(den);
    if (ds == 0) throw domain_error("division by zero");
    if (ds < 0) {
        num = negate_node(num);
        den = negate_node(den);
    }
    if (is_leaf(num) && is_leaf(den)) return Scalar(make_leaf(num->leaf / den->leaf));
    return Scalar(make_op(Op::Div, num, den));
}

int known_sign(const NodePtr& n) { return Scalar(n).sign(); }

}  // namespace

Scalar::Scalar() : node_(detail::make_leaf(Rational(0))) {}

Scalar Scalar::from_rational(const Rational& r) { return Scalar(detail::make_leaf(r)); }
Scalar Scalar::from_int(long v) { return Scalar(detail::make_leaf(Rational(v))); }

std::optional<Rational> Scalar::exact_rational() const {
    if (node_->op == Op::Leaf) return node_->leaf;
    return std::nullopt;
}

namespace {

Scalar add_like(Op op, const NodePtr& x, const NodePtr& y) {
    NodePtr p = num_of(x), q = den_of(x);
    NodePtr r = num_of(y), s = den_of(y);
    if (!q && !s) return Scalar(combine(op, p, r));
    if (q == s) return make_quotient(combine(op, p, r), q);  // shared denominator node
    // p/q op r/s = (p*s op r*q) / (q*s)
    return make_quotient(combine(op, mul_opt(p, s), mul_opt(r, q)), mul_opt(q, s));
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const { return add_like(Op::Add, node_, o.node_); }

Scalar Scalar::operator-(const Scalar& o) const { return add_like(Op::Sub, node_, o.node_); }

Scalar Scalar::operator*(const Scalar& o) const {
    NodePtr p = num_of(node_), q = den_of(node_);
    NodePtr r = num_of(o.node_), s = den_of(o.node_);
    return make_quotient(combine(Op::Mul, p, r), mul_opt(q, s));
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.sign() == 0) throw domain_error("division by zero");
    NodePtr p = num_of(node_), q = den_of(node_);
    NodePtr r = num_of(o.node_), s = den_of(o.node_);
    // (p/q) / (r/s) = (p*s) / (q*r)
    return make_quotient(mul_opt(p, s), mul_opt(q, r));
}

Scalar Scalar::operator-() const { return Scalar::from_int(0) - *this; }

Scalar sqrt(const Scalar& x) {
    int sg = x.sign();
    if (sg < 0) throw domain_error("sqrt of a negative value");
    if (sg == 0) return Scalar::from_int(0);
    NodePtr p = num_of(x.node()), q = den_of(x.node());
    // sqrt(p/q) = sqrt(p*q) / q  (q > 0 by the quotient invariant)
    NodePtr radicand = mul_opt(p, q);
    if (is_leaf(radicand)) {
        const Rational& r = radicand->leaf;
        BigInt rp = boost::multiprecision::numerator(r);
        BigInt rq = boost::multiprecision::denominator(r);
        BigInt sp = detail::isqrt_floor(rp), sq = detail::isqrt_floor(rq);
        if (sp * sp == rp && sq * sq == rq)
            return make_quotient(make_leaf(Rational(sp, sq)), q);
    }
    return make_quotient(make_op(Op::Sqrt, radicand, nullptr), q);
}

long precision_cap() {
    static long cap = [] {
        if (const char* env = std::getenv("DISSECT_PRECISION_CAP")) {
            long v = std::atol(env);
            if (v >= 64) return v;
        }
        return 4096L;
    }();
    return cap;
}

int Scalar::sign() const {
    const Node* n = node_.get();
    if (n->op == Op::Leaf) return n->leaf.sign();
    // Quotient invariant: denominators are positive, so only the numerator
    // decides the sign.
    if (n->op == Op::Div) return Scalar(n->a).sign();
    {
        std::lock_guard<std::mutex> lk(n->mu);
        if (n->cached_sign) return *n->cached_sign;
    }
    int result = 0;
    long cap = precision_cap();
    long sep = -1;
    detail::Dyadic sep_value;
    for (long p = 64;;) {
        detail::Interval iv = detail::refine(n, p);
        if (iv.lo.m.sign() > 0) {
            result = 1;
            break;
        }
        if (iv.hi.m.sign() < 0) {
            result = -1;
            break;
        }
        if (sep < 0) {
            sep = detail::separation_bits(n);
            sep_value = detail::Dyadic{BigInt(1), -sep};
        }
        if (detail::dy_cmp(detail::dy_sub(iv.hi, iv.lo), sep_value) < 0) {
            result = 0;  // certified by the separation bound
            break;
        }
        // Keep doubling until the cap, then jump straight to the precision
        // the separation bound demands.
        if (p >= 4096) fprintf(stderr, "SLOWSIGN p=%ld sep=%ld\n", p, sep);
        p = p < cap ? p * 2 : std::max(p * 2, sep + 8);
    }
    std::lock_guard<std::mutex> lk(n->mu);
    n->cached_sign = result;
    return result;
}

void Scalar::enclosure(long prec_bits, Rational& lo, Rational& hi) const {
    detail::Dyadic target{BigInt(1), -prec_bits};
    for (long p = std::max(prec_bits, 8L);; p *= 2) {
        detail::Interval iv = detail::refine(node_.get(), p);
        if (detail::dy_cmp(detail::dy_sub(iv.hi, iv.lo), target) <= 0) {
            lo = detail::dy_to_rational(iv.lo);
            hi = detail::dy_to_rational(iv.hi);
            return;
        }
    }
}

double Scalar::approx() const {
    Rational lo, hi;
    enclosure(60, lo, hi);
    return ((lo + hi) / 2).convert_to<double>();
}

namespace {

void serialize(const Node* n, std::string& out) {
    switch (n->op) {
        case Op::Leaf: {
            const Rational& r = n->leaf;
            out += boost::multiprecision::numerator(r).str();
            if (boost::multiprecision::denominator(r) != 1) {
                out += '/';
                out += boost::multiprecision::denominator(r).str();
            }
            break;
        }
        case Op::Sqrt:
            out += "sqrt(";
            serialize(n->a.get(), out);
            out += ')';
            break;
        default: {
            char op = n->op == Op::Add ? '+' : n->op == Op::Sub ? '-' : n->op == Op::Mul ? '*' : '/';
            out += '(';
            serialize(n->a.get(), out);
            out += op;
            serialize(n->b.get(), out);
            out += ')';
        }
    }
}

}  // namespace

const std::string& Scalar::structural_key() const {
    const Node* n = node_.get();
    std::lock_guard<std::mutex> lk(n->mu);
    if (n->cached_key.empty()) serialize(n, n->cached_key);
    return n->cached_key;
}

std::string Scalar::text() const { return structural_key(); }

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            pos++;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) { throw parse_error(what, pos); }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }

    Scalar factor() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            pos++;
            Scalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == '-') {
            pos++;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (s.compare(pos, 4, "sqrt") == 0) {
            pos += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            Scalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return sqrt(v);
        }
        fail("unexpected character");
    }

    Scalar number() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        BigInt num(s.substr(start, pos - start));
        return Scalar::from_rational(Rational(num));
    }
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
    Parser p(text);
    Scalar v = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

}  // namespace dissect
