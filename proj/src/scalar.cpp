#include "hft/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hft {

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
    // den is monic; both ascending.
    const std::size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<long> compute_cyclotomic(int m) {
    std::vector<long> num(static_cast<std::size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = poly_div_exact(num, cyclotomic_poly(d));
    return num;
}

}  // namespace

int euler_phi(int m) {
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    int r = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<long>& cyclotomic_poly(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    std::vector<long> p = m == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic(m);
    std::lock_guard<std::mutex> lock(mu);
    // std::map never invalidates references, so handing one out is safe.
    return cache.emplace(m, std::move(p)).first->second;
}

Scalar::Scalar() : m_(1), c_(1) {}
Scalar::Scalar(long v) : m_(1), c_{mpq_class(v)} {}
Scalar::Scalar(long num, long den) : m_(1), c_{mpq_class(num, den)} {
    if (den == 0) throw std::domain_error("zero denominator");
    c_[0].canonicalize();
}
Scalar::Scalar(const mpq_class& q) : m_(1), c_{q} { c_[0].canonicalize(); }

Scalar::Scalar(int m, std::vector<mpq_class> c) : m_(m), c_(std::move(c)) { canonicalize(); }

void Scalar::canonicalize() {
    if (m_ == 1) return;
    const auto& phi = cyclotomic_poly(m_);
    const std::size_t deg = phi.size() - 1;
    // Reduce by the monic cyclotomic polynomial from the top down.
    for (std::size_t i = c_.size(); i-- > deg;) {
        if (sgn(c_[i]) == 0) continue;
        mpq_class lead = c_[i];
        for (std::size_t j = 0; j <= deg; ++j) c_[i - deg + j] -= lead * phi[j];
    }
    c_.resize(deg);
    bool rational = true;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) rational = false;
    if (rational) {
        m_ = 1;
        c_.resize(1);
    }
}

Scalar Scalar::zeta(int m, long k) {
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    long e = ((k % m) + m) % m;
    std::vector<mpq_class> c(static_cast<std::size_t>(e) + 1);
    c[static_cast<std::size_t>(e)] = 1;
    if (m == 1) return Scalar(1);
    return Scalar(m, std::move(c));
}

Scalar Scalar::lifted(int target) const {
    if (target == m_) return *this;
    const int step = target / m_;
    std::vector<mpq_class> c(static_cast<std::size_t>(target));
    for (std::size_t k = 0; k < c_.size(); ++k)
        c[(k * static_cast<std::size_t>(step)) % static_cast<std::size_t>(target)] += c_[k];
    Scalar out;
    out.m_ = target;
    out.c_ = std::move(c);
    // Keep target conductor during reduction even if the value is rational.
    out.canonicalize();
    return out;
}

namespace {
int common_conductor(int a, int b) { return std::lcm(a, b); }
}  // namespace

bool Scalar::is_zero() const { return m_ == 1 && sgn(c_[0]) == 0; }
bool Scalar::is_one() const { return m_ == 1 && c_[0] == 1; }

const mpq_class& Scalar::rational() const {
    if (m_ != 1) throw std::logic_error("scalar is not rational");
    return c_[0];
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.m_ == 1) {
        c_[0] += o.c_[0];
        if (m_ != 1) canonicalize();
        return *this;
    }
    int L = common_conductor(m_, o.m_);
    Scalar a = lifted(L), b = o.lifted(L);
    // A lift may have demoted to conductor 1; re-expand to L coefficients.
    std::vector<mpq_class> c(static_cast<std::size_t>(L));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    *this = Scalar(L, std::move(c));
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (o.m_ == 1) {
        for (auto& x : c_) x *= o.c_[0];
        if (m_ != 1) canonicalize();
        return *this;
    }
    if (m_ == 1) {
        mpq_class s = c_[0];
        *this = o;
        for (auto& x : c_) x *= s;
        canonicalize();
        return *this;
    }
    int L = common_conductor(m_, o.m_);
    Scalar a = lifted(L), b = o.lifted(L);
    std::vector<mpq_class> c(a.c_.size() + b.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    *this = Scalar(L, std::move(c));
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (m_ == 1) return Scalar(mpq_class(1) / c_[0]);
    // Solve (multiplication-by-this) x = 1 in the power basis.
    const std::size_t n = c_.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<mpq_class> e(n);
        e[j] = 1;
        Scalar col = *this * Scalar(m_, e);
        Scalar wide = col.lifted(m_);
        for (std::size_t i = 0; i < n && i < wide.c_.size(); ++i) a[i][j] = wide.c_[i];
    }
    a[0][n] = 1;
    for (std::size_t col = 0, row = 0; col < n; ++col, ++row) {
        std::size_t p = row;
        while (p < n && sgn(a[p][col]) == 0) ++p;
        if (p == n) throw std::domain_error("singular cyclotomic element");
        std::swap(a[p], a[row]);
        mpq_class inv = mpq_class(1) / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || sgn(a[r][col]) == 0) continue;
            mpq_class f = a[r][col];
            for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[row][k];
        }
    }
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return Scalar(m_, std::move(x));
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.m_ == 1) {
        if (sgn(o.c_[0]) == 0) throw std::domain_error("division by zero");
        for (auto& x : c_) x /= o.c_[0];
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    if (a.m_ == 1 || b.m_ == 1) return false;  // canonical rationals never carry m > 1
    int L = std::lcm(a.m_, b.m_);
    return (a - b).is_zero() && L > 0;
}

bool lex_less(const Scalar& a, const Scalar& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string Scalar::str() const {
    if (m_ == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k].get_str();
        if (k > 0) os << "*z^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar Scalar::parse(const std::string& text, int conductor) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    Scalar total(0);
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && !(s[j] == '-' && s[j - 1] != '^')) ++j;
        std::string term = s.substr(i, j - i);
        if (!term.empty() && term[0] == '+') term.erase(0, 1);
        if (term.empty()) {
            i = j;
            continue;
        }
        long power = 0;
        std::string coef = term;
        auto star = term.find('z');
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            std::string rest = term.substr(star + 1);
            if (rest.empty()) {
                power = 1;
            } else if (rest[0] == '^') {
                power = std::stol(rest.substr(1));
            } else {
                throw std::invalid_argument("bad scalar term: " + term);
            }
            if (coef.empty() || coef == "+") coef = "1";
            if (coef == "-") coef = "-1";
        }
        mpq_class q;
        if (q.set_str(coef, 10) != 0) throw std::invalid_argument("bad scalar term: " + term);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + term);
        q.canonicalize();
        total += Scalar(q) * zeta(conductor, power);
        i = j;
    }
    return total;
}

}  // namespace hft
