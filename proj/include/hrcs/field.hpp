#ifndef HRCS_FIELD_HPP
#define HRCS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "hrcs/errors.hpp"

namespace hrcs {

class FieldElement;

// GF(p^e) with a fixed monic irreducible reduction polynomial, found by
// exhaustive lexicographic search at construction.  Elements are canonical
// coefficient vectors in {0,...,p-1}^e; the integer encoding of an element is
// sum_i c_i * p^i, and that encoding fixes the deterministic element order
// omega_0, ..., omega_{q-1} used everywhere (omega_0 = 0, omega_i = i for
// prime fields).
class Field : public std::enable_shared_from_this<Field> {
  public:
    static constexpr std::int64_t kDefaultOrderBound = 1 << 16;
    static constexpr std::int64_t kInvTableBound = 1 << 12;

    static std::shared_ptr<const Field> make(int p, int e,
                                             std::int64_t order_bound = kDefaultOrderBound) {
        return std::shared_ptr<const Field>(new Field(p, e, order_bound));
    }

    int characteristic() const { return p_; }
    int degree() const { return e_; }
    std::int64_t order() const { return q_; }

    // Monic reduction polynomial, coefficient i of x^i, length e+1.
    const std::vector<int>& reduction_poly() const { return reduction_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(std::int64_t index) const;  // omega_index

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;

  private:
    Field(int p, int e, std::int64_t order_bound) : p_(p), e_(e) {
        if (!is_prime(p)) throw NotPrime("p = " + std::to_string(p));
        if (e < 1) throw UnsupportedOrder("extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > order_bound)
                throw UnsupportedOrder("p^e exceeds configured bound " +
                                       std::to_string(order_bound));
        }
        reduction_ = find_irreducible(p, e);
        if (q_ <= kInvTableBound) build_inv_table();
    }

    // --- raw element arithmetic on coefficient vectors (table construction) ---

    std::vector<int> raw_mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> prod(2 * e_ - 1, 0);
        for (int i = 0; i < e_; ++i)
            for (int j = 0; j < e_; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        std::vector<int> r = poly_mod(std::move(prod), reduction_, p_);
        r.resize(e_, 0);
        return r;
    }

    std::vector<int> raw_element(std::int64_t index) const {
        std::vector<int> c(e_, 0);
        for (int i = 0; i < e_; ++i) {
            c[i] = static_cast<int>(index % p_);
            index /= p_;
        }
        return c;
    }

    std::int64_t raw_index(const std::vector<int>& c) const {
        std::int64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
        return v;
    }

    void build_inv_table() {
        inv_table_.assign(q_, 0);
        std::vector<int> one_c(e_, 0);
        one_c[0] = 1;
        for (std::int64_t i = 1; i < q_; ++i) {
            std::vector<int> result = one_c;
            std::vector<int> base = raw_element(i);
            std::int64_t exp = q_ - 2;
            while (exp > 0) {
                if (exp & 1) result = raw_mul(result, base);
                base = raw_mul(base, base);
                exp >>= 1;
            }
            inv_table_[i] = raw_index(result);
        }
    }

    static bool is_prime(int p) {
        if (p < 2) return false;
        for (int d = 2; static_cast<std::int64_t>(d) * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    // --- polynomial helpers over GF(p), dense coefficient vectors ---

    static void trim(std::vector<int>& a) {
        while (a.size() > 1 && a.back() == 0) a.pop_back();
    }

    // remainder of a mod b (b monic), both over GF(p)
    static std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
        trim(a);
        while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
            int shift = static_cast<int>(a.size() - b.size());
            int coef = a.back();
            for (std::size_t i = 0; i < b.size(); ++i) {
                int& t = a[shift + i];
                t = (t - coef * b[i]) % p;
                if (t < 0) t += p;
            }
            trim(a);
            if (static_cast<int>(a.size() - b.size()) == shift) break;  // no progress
        }
        return a;
    }

    static bool divides(const std::vector<int>& divisor, const std::vector<int>& a, int p) {
        std::vector<int> r = poly_mod(a, divisor, p);
        for (int c : r)
            if (c != 0) return false;
        return true;
    }

    // First (lexicographically by integer encoding of the non-leading
    // coefficients) monic irreducible polynomial of degree e over GF(p),
    // verified by trial division against every monic polynomial of degree
    // 1..e/2.
    static std::vector<int> find_irreducible(int p, int e) {
        if (e == 1) return {0, 1};  // x
        std::int64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (std::int64_t enc = 0; enc < count; ++enc) {
            std::vector<int> cand(e + 1, 0);
            std::int64_t v = enc;
            for (int i = 0; i < e; ++i) {
                cand[i] = static_cast<int>(v % p);
                v /= p;
            }
            cand[e] = 1;
            if (is_irreducible(cand, p, e)) return cand;
        }
        throw NoIrreducibleFound("degree " + std::to_string(e) + " over GF(" +
                                 std::to_string(p) + ")");
    }

    static bool is_irreducible(const std::vector<int>& cand, int p, int e) {
        if (cand[0] == 0) return false;  // divisible by x
        for (int d = 1; 2 * d <= e; ++d) {
            std::int64_t cnt = 1;
            for (int i = 0; i < d; ++i) cnt *= p;
            for (std::int64_t enc = 0; enc < cnt; ++enc) {
                std::vector<int> div(d + 1, 0);
                std::int64_t v = enc;
                for (int i = 0; i < d; ++i) {
                    div[i] = static_cast<int>(v % p);
                    v /= p;
                }
                div[d] = 1;
                if (divides(div, cand, p)) return false;
            }
        }
        return true;
    }

    friend class FieldElement;

    int p_;
    int e_;
    std::int64_t q_ = 0;
    std::vector<int> reduction_;
    std::vector<std::int64_t> inv_table_;  // index -> inverse index, small fields only
};

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const Field> field, std::vector<int> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {}

    const std::shared_ptr<const Field>& field() const { return field_; }
    const std::vector<int>& coeffs() const { return c_; }

    std::int64_t index() const {
        std::int64_t v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * field_->characteristic() + c_[i];
        return v;
    }

    bool is_zero() const {
        for (int x : c_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const FieldElement& o) const {
        return field_->order() == o.field_->order() &&
               field_->characteristic() == o.field_->characteristic() && c_ == o.c_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const { return field_->add(*this, o); }
    FieldElement operator-(const FieldElement& o) const { return field_->sub(*this, o); }
    FieldElement operator*(const FieldElement& o) const { return field_->mul(*this, o); }
    FieldElement operator/(const FieldElement& o) const { return field_->div(*this, o); }
    FieldElement operator-() const { return field_->neg(*this); }

  private:
    std::shared_ptr<const Field> field_;
    std::vector<int> c_;
};

inline FieldElement Field::zero() const {
    return FieldElement(shared_from_this(), std::vector<int>(e_, 0));
}

inline FieldElement Field::one() const {
    std::vector<int> c(e_, 0);
    c[0] = 1;
    return FieldElement(shared_from_this(), c);
}

inline FieldElement Field::element(std::int64_t index) const {
    if (index < 0 || index >= q_)
        throw UnsupportedOrder("element index " + std::to_string(index) + " out of range");
    std::vector<int> c(e_, 0);
    for (int i = 0; i < e_; ++i) {
        c[i] = static_cast<int>(index % p_);
        index /= p_;
    }
    return FieldElement(shared_from_this(), c);
}

namespace detail {
inline void check_same_field(const Field& f, const FieldElement& a, const FieldElement& b) {
    if (a.field().get() != b.field().get() || a.field().get() != &f)
        throw FieldMismatch("operands from different fields");
}
}  // namespace detail

inline FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    detail::check_same_field(*this, a, b);
    std::vector<int> c(e_);
    for (int i = 0; i < e_; ++i) c[i] = (a.coeffs()[i] + b.coeffs()[i]) % p_;
    return FieldElement(shared_from_this(), c);
}

inline FieldElement Field::neg(const FieldElement& a) const {
    std::vector<int> c(e_);
    for (int i = 0; i < e_; ++i) c[i] = (p_ - a.coeffs()[i]) % p_;
    return FieldElement(a.field(), c);
}

inline FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
}

inline FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    detail::check_same_field(*this, a, b);
    std::vector<int> prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + a.coeffs()[i] * b.coeffs()[j]) % p_;
    std::vector<int> r = poly_mod(std::move(prod), reduction_, p_);
    r.resize(e_, 0);
    return FieldElement(shared_from_this(), r);
}

inline FieldElement Field::inv(const FieldElement& a) const {
    if (a.is_zero()) throw DivideByZero("inverse of zero");
    if (!inv_table_.empty()) return element(inv_table_[a.index()]);
    // a^(q-2) by square-and-multiply
    FieldElement result = one();
    FieldElement base = a;
    std::int64_t exp = q_ - 2;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

inline FieldElement Field::div(const FieldElement& a, const FieldElement& b) const {
    detail::check_same_field(*this, a, b);
    return mul(a, inv(b));
}

// Fixed-length-alpha coefficient sequence: represents a polynomial of degree
// less than alpha (the leading stored coefficient may be zero).
class Poly {
  public:
    Poly(std::shared_ptr<const Field> field, std::vector<FieldElement> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {}

    static Poly zero(const std::shared_ptr<const Field>& field, int alpha) {
        return Poly(field, std::vector<FieldElement>(alpha, field->zero()));
    }

    const std::shared_ptr<const Field>& field() const { return field_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    int length() const { return static_cast<int>(c_.size()); }

    const FieldElement& coeff(int i) const { return c_[i]; }

    // Horner evaluation.
    FieldElement eval(const FieldElement& beta) const {
        if (beta.field().get() != field_.get())
            throw FieldMismatch("evaluation point from a different field");
        FieldElement acc = field_->zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * beta + c_[i];
        return acc;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

  private:
    std::shared_ptr<const Field> field_;
    std::vector<FieldElement> c_;
};

inline FieldElement poly_eval(const Poly& f, const FieldElement& beta) { return f.eval(beta); }

// The unique polynomial of degree < alpha through the given alpha points.
inline Poly lagrange_interpolate(const std::vector<std::pair<FieldElement, FieldElement>>& points,
                                 int alpha) {
    if (static_cast<int>(points.size()) != alpha)
        throw WrongPointCount("need exactly " + std::to_string(alpha) + " points, got " +
                              std::to_string(points.size()));
    const auto& field = points[0].first.field();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw DuplicateNode("repeated interpolation node");

    std::vector<FieldElement> acc(alpha, field->zero());
    std::vector<FieldElement> basis(alpha, field->zero());
    for (int i = 0; i < alpha; ++i) {
        // basis <- prod_{j != i} (x - beta_j) / (beta_i - beta_j), times g_i
        std::fill(basis.begin(), basis.end(), field->zero());
        basis[0] = field->one();
        int deg = 0;
        FieldElement denom = field->one();
        for (int j = 0; j < alpha; ++j) {
            if (j == i) continue;
            const FieldElement& bj = points[j].first;
            for (int d = deg; d >= 0; --d) {
                FieldElement shifted = basis[d];
                basis[d] = basis[d] * (-bj);
                if (d + 1 < alpha) basis[d + 1] = basis[d + 1] + shifted;
            }
            ++deg;
            denom = denom * (points[i].first - bj);
        }
        FieldElement scale = points[i].second / denom;
        for (int d = 0; d < alpha; ++d) acc[d] = acc[d] + basis[d] * scale;
    }
    return Poly(field, acc);
}

inline std::shared_ptr<const Field> field_new(int p, int e,
                                              std::int64_t order_bound = Field::kDefaultOrderBound) {
    return Field::make(p, e, order_bound);
}

}  // namespace hrcs

#endif
