#include "ctoa/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctoa {

PotentialSpec PotentialSpec::free() {
    PotentialSpec v;
    v.kind_ = PotentialKind::Free;
    v.coeffs_ = {0.0};
    return v;
}

PotentialSpec PotentialSpec::linear(double lambda) {
    PotentialSpec v;
    v.kind_ = PotentialKind::Linear;
    v.lambda_ = lambda;
    v.coeffs_ = {0.0, lambda};
    return v;
}

PotentialSpec PotentialSpec::harmonic(double omega, double mu) {
    PotentialSpec v;
    v.kind_ = PotentialKind::Harmonic;
    v.omega_ = omega;
    v.coeffs_ = {0.0, 0.0, 0.5 * mu * omega * omega};
    return v;
}

PotentialSpec PotentialSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("PotentialSpec: non-finite coefficient");
    PotentialSpec v;
    v.kind_ = PotentialKind::Polynomial;
    v.coeffs_ = std::move(coeffs);
    return v;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("PotentialSpec: tabulated data needs >= 2 matching samples");
    if (!std::is_sorted(nodes.begin(), nodes.end()))
        throw std::invalid_argument("PotentialSpec: tabulated nodes must be ascending");
    PotentialSpec v;
    v.kind_ = PotentialKind::Tabulated;
    v.tab_nodes_ = std::move(nodes);
    v.tab_values_ = std::move(values);
    v.coeffs_.clear();
    return v;
}

int PotentialSpec::degree() const {
    if (kind_ == PotentialKind::Tabulated) return -1;
    int d = 0;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
        if (coeffs_[static_cast<size_t>(i)] != 0.0) { d = i; break; }
    }
    return d;
}

namespace {

// Catmull-Rom segment evaluation; clamped slopes at the ends.
double interp_cubic(const std::vector<double>& x, const std::vector<double>& y, double q) {
    auto it = std::upper_bound(x.begin(), x.end(), q);
    size_t i = (it == x.begin()) ? 0 : static_cast<size_t>(it - x.begin()) - 1;
    if (i >= x.size() - 1) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (q - x[i]) / h;
    const double y0 = y[i], y1 = y[i + 1];
    const double m0 = (i == 0) ? (y1 - y0) : 0.5 * (y1 - y[i - 1]) * (h / (x[i + 1] - x[i - 1])) * 2.0;
    const double m1 = (i + 2 >= x.size()) ? (y1 - y0)
                                          : 0.5 * (y[i + 2] - y0) * (h / (x[i + 2] - x[i])) * 2.0;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
}

} // namespace

double PotentialSpec::eval(double q) const {
    if (kind_ == PotentialKind::Tabulated) {
        if (q < tab_nodes_.front() || q > tab_nodes_.back())
            throw std::domain_error("PotentialSpec: q outside tabulated range");
        return interp_cubic(tab_nodes_, tab_values_, q);
    }
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
    return acc;
}

double PotentialSpec::derivative(double q) const {
    if (kind_ == PotentialKind::Tabulated) {
        const double h = 1e-6 * (tab_nodes_.back() - tab_nodes_.front());
        const double a = std::max(tab_nodes_.front(), q - h);
        const double b = std::min(tab_nodes_.back(), q + h);
        return (eval(b) - eval(a)) / (b - a);
    }
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 1;) acc = acc * q + coeffs_[i] * static_cast<double>(i);
    return acc;
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case PotentialKind::Free: os << "free"; break;
        case PotentialKind::Linear: os << "linear(lambda=" << lambda_ << ")"; break;
        case PotentialKind::Harmonic: os << "harmonic(omega=" << omega_ << ")"; break;
        case PotentialKind::Polynomial: {
            os << "polynomial(";
            for (size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
            os << ")";
            break;
        }
        case PotentialKind::Tabulated: os << "tabulated(" << tab_nodes_.size() << " samples)"; break;
    }
    return os.str();
}

} // namespace ctoa
