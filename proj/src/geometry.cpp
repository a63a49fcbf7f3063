#include "catsim/geometry.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace catsim {

namespace {

bool is_pow2(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Geometry::Geometry(int n_cat_exp, int nu_exp, int n_small,
                   std::vector<int> shifts)
    : n_small_(n_small), shifts_(std::move(shifts)) {
    if (n_small < 0)
        throw std::invalid_argument("geometry: n_small must be >= 0, got " +
                                    std::to_string(n_small));
    if (nu_exp < 0 || n_cat_exp < 0)
        throw std::invalid_argument("geometry: exponents must be >= 0");
    if (nu_exp > n_cat_exp)
        throw std::invalid_argument(
            "geometry: nu_exp (" + std::to_string(nu_exp) +
            ") must not exceed n_cat_exp (" + std::to_string(n_cat_exp) +
            "): the scatterer lattice must refine into the large one");
    if (n_cat_exp > 20)
        throw std::invalid_argument("geometry: n_cat_exp too large");

    n_cat_ = 1 << n_cat_exp;
    nu_ = 1 << nu_exp;

    if (shifts_.empty()) shifts_.assign(static_cast<std::size_t>(n_small), 0);
    if (shifts_.size() != static_cast<std::size_t>(n_small))
        throw std::invalid_argument(
            "geometry: expected " + std::to_string(n_small) + " shifts, got " +
            std::to_string(shifts_.size()));

    const int shift_range = n_cat_ / nu_;
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        if (shifts_[i] < 0 || shifts_[i] >= shift_range)
            throw std::invalid_argument(
                "geometry: shift s_" + std::to_string(i + 1) + " = " +
                std::to_string(shifts_[i]) + " outside [0, " +
                std::to_string(shift_range) + ")");
    }

    long double d = static_cast<long double>(n_cat_);
    for (int i = 0; i < n_small_; ++i) d *= nu_;
    if (d > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 4))
        throw std::invalid_argument("geometry: joint dimension overflows");
    dim_ = static_cast<std::size_t>(n_cat_);
    for (int i = 0; i < n_small_; ++i) dim_ *= static_cast<std::size_t>(nu_);

    (void)is_pow2(n_cat_);  // guaranteed by construction from exponents
}

std::size_t Geometry::axis_stride(int particle) const {
    std::size_t s = 1;
    if (particle > 0) {
        s = static_cast<std::size_t>(n_cat_);
        for (int i = 1; i < particle; ++i) s *= static_cast<std::size_t>(nu_);
    }
    return s;
}

std::size_t Geometry::flatten(const MultiIndex& idx) const {
    if (idx.large < 0 || idx.large >= n_cat_)
        throw std::out_of_range("flatten: large index " +
                                std::to_string(idx.large) + " outside [0, " +
                                std::to_string(n_cat_) + ")");
    if (idx.small.size() != static_cast<std::size_t>(n_small_))
        throw std::out_of_range("flatten: expected " +
                                std::to_string(n_small_) + " small indices");
    std::size_t k = 0;
    for (int i = n_small_ - 1; i >= 0; --i) {
        const int j = idx.small[static_cast<std::size_t>(i)];
        if (j < 0 || j >= nu_)
            throw std::out_of_range("flatten: small index " +
                                    std::to_string(j) + " outside [0, " +
                                    std::to_string(nu_) + ")");
        k = k * static_cast<std::size_t>(nu_) + static_cast<std::size_t>(j);
    }
    return k * static_cast<std::size_t>(n_cat_) +
           static_cast<std::size_t>(idx.large);
}

MultiIndex Geometry::unflatten(std::size_t k) const {
    if (k >= dim_)
        throw std::out_of_range("unflatten: index " + std::to_string(k) +
                                " outside [0, " + std::to_string(dim_) + ")");
    MultiIndex idx;
    idx.large = static_cast<int>(k % static_cast<std::size_t>(n_cat_));
    k /= static_cast<std::size_t>(n_cat_);
    idx.small.resize(static_cast<std::size_t>(n_small_));
    for (int i = 0; i < n_small_; ++i) {
        idx.small[static_cast<std::size_t>(i)] =
            static_cast<int>(k % static_cast<std::size_t>(nu_));
        k /= static_cast<std::size_t>(nu_);
    }
    return idx;
}

bool Geometry::operator==(const Geometry& other) const {
    return n_cat_ == other.n_cat_ && nu_ == other.nu_ &&
           n_small_ == other.n_small_ && shifts_ == other.shifts_;
}

Geometry build_geometry(int n_cat_exp, int nu_exp, int n_small,
                        std::vector<int> shifts) {
    return Geometry(n_cat_exp, nu_exp, n_small, std::move(shifts));
}

}  // namespace catsim
