#pragma once

#include <cstdint>
#include <vector>

#include "rwadic/errors.hpp"

namespace rwadic {

// Target group Z^k x R^{D-k}: the first `lattice_rank` coordinates are
// 64-bit integers with checked arithmetic, the rest are doubles.
struct GroupSpec {
    int lattice_rank = 0;  // k
    int dimension = 0;     // D

    int continuous_rank() const { return dimension - lattice_rank; }

    void validate() const {
        if (dimension < 1) throw GroupMismatchError("group dimension must be positive");
        if (lattice_rank < 0 || lattice_rank > dimension)
            throw GroupMismatchError("lattice rank must lie between 0 and the dimension");
    }

    bool operator==(const GroupSpec& o) const {
        return lattice_rank == o.lattice_rank && dimension == o.dimension;
    }
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw IntegerOverflowError("64-bit lattice coordinate overflow");
    return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out))
        throw IntegerOverflowError("64-bit lattice coordinate overflow");
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw IntegerOverflowError("64-bit lattice coordinate overflow");
    return out;
}

struct GroupElement {
    std::vector<std::int64_t> lattice;
    std::vector<double> continuous;

    static GroupElement zero(const GroupSpec& spec) {
        GroupElement e;
        e.lattice.assign(static_cast<std::size_t>(spec.lattice_rank), 0);
        e.continuous.assign(static_cast<std::size_t>(spec.continuous_rank()), 0.0);
        return e;
    }

    bool is_zero() const {
        for (auto v : lattice)
            if (v != 0) return false;
        for (auto v : continuous)
            if (v != 0.0) return false;
        return true;
    }

    void add(const GroupElement& o) {
        for (std::size_t i = 0; i < lattice.size(); ++i) lattice[i] = checked_add(lattice[i], o.lattice[i]);
        for (std::size_t i = 0; i < continuous.size(); ++i) continuous[i] += o.continuous[i];
    }

    void sub(const GroupElement& o) {
        for (std::size_t i = 0; i < lattice.size(); ++i) lattice[i] = checked_sub(lattice[i], o.lattice[i]);
        for (std::size_t i = 0; i < continuous.size(); ++i) continuous[i] -= o.continuous[i];
    }

    std::vector<double> as_real() const {
        std::vector<double> out;
        out.reserve(lattice.size() + continuous.size());
        for (auto v : lattice) out.push_back(static_cast<double>(v));
        for (auto v : continuous) out.push_back(v);
        return out;
    }

    bool operator==(const GroupElement& o) const {
        return lattice == o.lattice && continuous == o.continuous;
    }
    bool operator<(const GroupElement& o) const {
        if (lattice != o.lattice) return lattice < o.lattice;
        return continuous < o.continuous;
    }
};

// Window I = L x J: a finite set of lattice vectors times a box in the
// continuous coordinates.  Haar mass is |L| * vol(J).
class Window {
public:
    Window(GroupSpec spec, std::vector<std::vector<std::int64_t>> lattice_points,
           std::vector<std::pair<double, double>> box)
        : spec_(spec), lattice_points_(std::move(lattice_points)), box_(std::move(box)) {
        spec_.validate();
        if (static_cast<int>(box_.size()) != spec_.continuous_rank())
            throw GroupMismatchError("box dimension does not match the continuous rank");
        if (lattice_points_.empty()) throw GroupMismatchError("window needs at least one lattice point");
        for (const auto& p : lattice_points_)
            if (static_cast<int>(p.size()) != spec_.lattice_rank)
                throw GroupMismatchError("lattice point dimension mismatch");
        for (const auto& [lo, hi] : box_)
            if (!(lo < hi)) throw GroupMismatchError("window box must have positive side lengths");
    }

    static Window origin(const GroupSpec& spec) {
        std::vector<std::vector<std::int64_t>> pts{
            std::vector<std::int64_t>(static_cast<std::size_t>(spec.lattice_rank), 0)};
        std::vector<std::pair<double, double>> box;
        for (int i = 0; i < spec.continuous_rank(); ++i) box.emplace_back(-0.5, 0.5);
        return Window(spec, std::move(pts), std::move(box));
    }

    const GroupSpec& spec() const { return spec_; }
    const std::vector<std::vector<std::int64_t>>& lattice_points() const { return lattice_points_; }
    const std::vector<std::pair<double, double>>& box() const { return box_; }

    bool contains(const GroupElement& g) const {
        for (std::size_t i = 0; i < box_.size(); ++i) {
            double v = g.continuous[i];
            if (v < box_[i].first || v >= box_[i].second) return false;
        }
        for (const auto& p : lattice_points_)
            if (p == g.lattice) return true;
        return false;
    }

    double haar_mass() const {
        double vol = 1.0;
        for (const auto& [lo, hi] : box_) vol *= hi - lo;
        return vol * static_cast<double>(lattice_points_.size());
    }

private:
    GroupSpec spec_;
    std::vector<std::vector<std::int64_t>> lattice_points_;
    std::vector<std::pair<double, double>> box_;
};

}  // namespace rwadic
