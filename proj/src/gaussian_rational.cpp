#include "grstrata/gaussian_rational.hpp"

#include "grstrata/error.hpp"

namespace grstrata {

Rational GaussianRational::max_abs() const {
    Rational a = abs(re_);
    Rational b = abs(im_);
    return a < b ? b : a;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw Error(ErrorCode::Inconsistent, "division by zero");
    Rational d = norm2();
    return {Rational(re_ / d), Rational(-im_ / d)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    if (sgn(im_) == 0) {
        im_ = re_ * o.im_;
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw Error(ErrorCode::Inconsistent, "division by zero");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    std::string s = re_.get_str();
    if (sgn(im_) > 0) s += "+";
    return s + im_.get_str() + "i";
}

}  // namespace grstrata
