#include "segrekit/gaussian.hpp"

#include <stdexcept>

namespace segrekit {

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero Gaussian rational");
    if (sgn(im_) == 0) return {1 / re_, 0};
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_.swap(r);
    im_.swap(i);
    return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
    const bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
    if (ar && br) {
        re_ += a.re_ * b.re_;
        return;
    }
    if (ar) {
        re_ += a.re_ * b.re_;
        im_ += a.re_ * b.im_;
        return;
    }
    if (br) {
        re_ += a.re_ * b.re_;
        im_ += a.im_ * b.re_;
        return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag = im_.get_str() + "i";
    if (sgn(re_) == 0) return imag;
    if (sgn(im_) > 0) return re_.get_str() + "+" + imag;
    return re_.get_str() + imag;
}

namespace {

mpq_class parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string t(s);
    if (t == "+" || t == "-") t += "1";
    if (t.front() == '+') t.erase(0, 1);
    for (std::size_t k = 0; k < t.size(); ++k) {
        char c = t[k];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && k == 0);
        if (!ok) throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
    if (t.find('/') != std::string::npos && q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw std::invalid_argument("empty Gaussian rational literal");
    if (s.back() != 'i') return {parse_rational(s), 0};
    s.pop_back();
    // split at the last sign that is not the leading character
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            cut = k;
            break;
        }
    }
    if (cut == std::string::npos) return {0, parse_rational(s.empty() ? "1" : s)};
    return {parse_rational(s.substr(0, cut)), parse_rational(s.substr(cut))};
}

std::size_t GaussianRational::hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31 + h(im_.get_str());
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

GaussianRational pow(const GaussianRational& base, long exponent) {
    if (exponent < 0) return pow(base.inverse(), -exponent);
    GaussianRational result(1), b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace segrekit
