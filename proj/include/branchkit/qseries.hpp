#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "branchkit/numeric.hpp"

namespace branchkit {

/// Truncated Laurent series in q with exact integer coefficients.
///
/// A QSeries knows its coefficients exactly on the window
/// [min_deg, trunc]; coefficients below min_deg are exactly zero, while
/// coefficients above trunc are unknown (not zero).  Arithmetic narrows
/// the truncation pessimistically so that no unknown coefficient can
/// ever leak into a result.
class QSeries {
public:
    QSeries() : min_deg_(0), trunc_(0) {}
    QSeries(Deg min_deg, Deg trunc);
    QSeries(Deg min_deg, Deg trunc, std::map<Deg, Int> coeffs);

    static QSeries zero(Deg trunc) { return QSeries(0, trunc); }
    static QSeries monomial(Deg deg, Int coeff, Deg trunc);
    static QSeries one(Deg trunc) { return monomial(0, 1, trunc); }

    Deg min_deg() const { return min_deg_; }
    Deg trunc() const { return trunc_; }
    const std::map<Deg, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of q^deg.  Throws if deg lies above the truncation,
    /// where the value is unknown.
    const Int& coeff(Deg deg) const;

    void set_coeff(Deg deg, Int value);
    void add_coeff(Deg deg, const Int& value);

    QSeries& operator+=(const QSeries& other);
    QSeries& operator-=(const QSeries& other);
    QSeries operator-() const;

    /// Multiply by q^m (sign +1 shift); m may be negative.
    QSeries shifted(Deg m) const;

    /// Substitute q -> q^{-1}, then multiply by q^m, keeping the window
    /// [lo, hi].  Degrees above the reversed support are exactly zero;
    /// asking below it raises an "insufficient truncation" error.
    QSeries reversed(Deg m, Deg lo, Deg hi) const;

    /// Narrow the truncation to new_trunc <= trunc.
    QSeries truncated(Deg new_trunc) const;

    /// Restrict the window from below, dropping coefficients < lo.
    QSeries restricted_below(Deg lo) const;

    /// Lowest degree with a nonzero coefficient, or trunc+1 if none.
    Deg first_nonzero() const;

    bool operator==(const QSeries& other) const {
        return trunc_ == other.trunc_ && coeffs_ == other.coeffs_;
    }
    bool operator!=(const QSeries& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    void canonicalize();

    Deg min_deg_;
    Deg trunc_;
    std::map<Deg, Int> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);

inline QSeries qs_mul(const QSeries& a, const QSeries& b) { return a * b; }

/// qs_shift: sign +1 is a plain exponent shift by m; sign -1 reverses
/// exponents (q -> q^{-1}) and then shifts, with an explicit window.
QSeries qs_shift(const QSeries& a, Deg m, int sign, Deg window_lo = 0, Deg window_hi = 0);

/// JSON per the wire format: {"trunc": N, "series": [[deg, "coeff"], ...]}
/// with coefficients as decimal strings, degrees ascending.
std::string qseries_to_json(const QSeries& s);

}  // namespace branchkit
