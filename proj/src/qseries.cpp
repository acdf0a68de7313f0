#include "branchkit/qseries.hpp"

#include <sstream>

namespace branchkit {

QSeries::QSeries(Deg min_deg, Deg trunc) : min_deg_(min_deg), trunc_(trunc) {
    if (min_deg_ > trunc_ + 1)
        throw std::invalid_argument("QSeries: window lower edge above truncation");
}

QSeries::QSeries(Deg min_deg, Deg trunc, std::map<Deg, Int> coeffs)
    : min_deg_(min_deg), trunc_(trunc), coeffs_(std::move(coeffs)) {
    if (min_deg_ > trunc_ + 1)
        throw std::invalid_argument("QSeries: window lower edge above truncation");
    canonicalize();
}

QSeries QSeries::monomial(Deg deg, Int coeff, Deg trunc) {
    if (deg > trunc)
        throw std::invalid_argument("QSeries::monomial: degree above truncation");
    QSeries s(deg, trunc);
    if (coeff != 0) s.coeffs_[deg] = std::move(coeff);
    return s;
}

void QSeries::canonicalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first < min_deg_ || it->first > trunc_)
            throw std::logic_error("QSeries: stored degree outside window");
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

static const Int kZero = 0;

const Int& QSeries::coeff(Deg deg) const {
    if (deg > trunc_)
        throw std::out_of_range("QSeries: coefficient above truncation is unknown");
    auto it = coeffs_.find(deg);
    return it == coeffs_.end() ? kZero : it->second;
}

void QSeries::set_coeff(Deg deg, Int value) {
    if (deg > trunc_ || deg < min_deg_)
        throw std::out_of_range("QSeries: degree outside window");
    if (value == 0)
        coeffs_.erase(deg);
    else
        coeffs_[deg] = std::move(value);
}

void QSeries::add_coeff(Deg deg, const Int& value) {
    if (value == 0) return;
    if (deg > trunc_ || deg < min_deg_)
        throw std::out_of_range("QSeries: degree outside window");
    Int& slot = coeffs_[deg];
    slot += value;
    if (slot == 0) coeffs_.erase(deg);
}

QSeries& QSeries::operator+=(const QSeries& other) {
    *this = *this + other;
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
    *this = *this - other;
    return *this;
}

QSeries QSeries::operator-() const {
    QSeries r(min_deg_, trunc_);
    for (const auto& [d, c] : coeffs_) r.coeffs_[d] = -c;
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.min_deg(), b.min_deg()), std::min(a.trunc(), b.trunc()));
    for (const auto& [d, c] : a.coeffs())
        if (d <= r.trunc()) r.add_coeff(d, c);
    for (const auto& [d, c] : b.coeffs())
        if (d <= r.trunc()) r.add_coeff(d, c);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    // Degrees above min(a.trunc + b.min_deg, b.trunc + a.min_deg) would
    // need coefficients beyond one factor's truncation.
    Deg trunc = std::min(a.trunc() + b.min_deg(), b.trunc() + a.min_deg());
    QSeries r(a.min_deg() + b.min_deg(), trunc);
    for (const auto& [da, ca] : a.coeffs()) {
        for (const auto& [db, cb] : b.coeffs()) {
            Deg d = da + db;
            if (d <= trunc) r.add_coeff(d, ca * cb);
        }
    }
    return r;
}

QSeries QSeries::shifted(Deg m) const {
    QSeries r(min_deg_ + m, trunc_ + m);
    for (const auto& [d, c] : coeffs_) r.coeffs_[d + m] = c;
    return r;
}

QSeries QSeries::reversed(Deg m, Deg lo, Deg hi) const {
    if (lo > hi) throw std::invalid_argument("QSeries::reversed: empty window");
    // After q -> q^{-1} and the shift by m, exact knowledge spans
    // [m - trunc, m - min_deg]; everything above m - min_deg is zero.
    Deg known_lo = m - trunc_;
    if (lo < known_lo) {
        std::ostringstream os;
        os << "insufficient truncation: window requests q^" << lo
           << " but reversal only reaches q^" << known_lo << " (short by "
           << (known_lo - lo) << " orders)";
        throw std::invalid_argument(os.str());
    }
    QSeries r(lo, hi);
    for (const auto& [d, c] : coeffs_) {
        Deg nd = m - d;
        if (nd >= lo && nd <= hi) r.coeffs_[nd] = c;
    }
    return r;
}

QSeries QSeries::truncated(Deg new_trunc) const {
    if (new_trunc > trunc_)
        throw std::invalid_argument("QSeries::truncated: cannot extend truncation");
    QSeries r(std::min(min_deg_, new_trunc), new_trunc);
    for (const auto& [d, c] : coeffs_)
        if (d <= new_trunc) r.coeffs_[d] = c;
    return r;
}

QSeries QSeries::restricted_below(Deg lo) const {
    QSeries r(lo, trunc_);
    for (const auto& [d, c] : coeffs_)
        if (d >= lo) r.coeffs_[d] = c;
    return r;
}

Deg QSeries::first_nonzero() const {
    if (coeffs_.empty()) return trunc_ + 1;
    return coeffs_.begin()->first;
}

QSeries qs_shift(const QSeries& a, Deg m, int sign, Deg window_lo, Deg window_hi) {
    if (sign == +1) return a.shifted(m);
    if (sign == -1) return a.reversed(m, window_lo, window_hi);
    throw std::invalid_argument("qs_shift: sign must be +1 or -1");
}

std::string QSeries::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        Int abs = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (abs != 1 || d == 0) os << abs.str();
        if (d != 0) {
            if (abs != 1) os << "*";
            os << "q";
            if (d != 1) os << "^" << d;
        }
    }
    os << " + O(q^" << (trunc_ + 1) << ")";
    return os.str();
}

std::string qseries_to_json(const QSeries& s) {
    std::ostringstream os;
    os << "{\"trunc\":" << s.trunc() << ",\"series\":[";
    bool first = true;
    for (const auto& [d, c] : s.coeffs()) {
        if (!first) os << ",";
        first = false;
        os << "[" << d << ",\"" << c.str() << "\"]";
    }
    os << "]}";
    return os.str();
}

}  // namespace branchkit
