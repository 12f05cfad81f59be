#ifndef BANDLATTICE_DETAIL_KAHAN_HPP
#define BANDLATTICE_DETAIL_KAHAN_HPP

#include <complex>

namespace bandlattice::detail {

// Kahan-compensated accumulator. All library reductions run in a fixed
// (ascending-index) order so results are bit-identical run to run.
template <typename T>
class KahanSum {
public:
    void add(T term) {
        T y = term - compensation_;
        T t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

private:
    T sum_{};
    T compensation_{};
};

template <>
class KahanSum<std::complex<double>> {
public:
    void add(std::complex<double> term) {
        re_.add(term.real());
        im_.add(term.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum<double> re_;
    KahanSum<double> im_;
};

}  // namespace bandlattice::detail

#endif
