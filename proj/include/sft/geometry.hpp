#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sft {

// Lattice offset in Z^d. Length always equals the ambient dimension.
using IVec = std::vector<int>;

inline IVec add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IVec negate(const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IVec scale(const IVec& a, int k) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

inline bool is_zero(const IVec& a) {
    for (int c : a)
        if (c != 0) return false;
    return true;
}

// floor/ceil division with positive divisor, exact for negative numerators
inline int floor_div(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

inline int mod_floor(int a, int b) {
    int m = a % b;
    return m < 0 ? m + b : m;
}

struct IVecHash {
    size_t operator()(const IVec& v) const {
        size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (int c : v) h = (h * 0x100000001b3ull) ^ static_cast<size_t>(static_cast<uint32_t>(c));
        return h;
    }
};

// Odometer over a box [0,dims[0]) x ... x [0,dims[d-1]), last coordinate fastest.
// Matches the canonical cell order of TorusConfig.
class BoxIter {
public:
    explicit BoxIter(std::vector<int> dims) : dims_(std::move(dims)), cur_(dims_.size(), 0) {
        done_ = false;
        for (int n : dims_)
            if (n <= 0) done_ = true;
    }
    bool done() const { return done_; }
    const IVec& operator*() const { return cur_; }
    void next() {
        for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
            if (++cur_[i] < dims_[i]) return;
            cur_[i] = 0;
        }
        done_ = true;
    }

private:
    std::vector<int> dims_;
    IVec cur_;
    bool done_;
};

inline int64_t cell_count(const std::vector<int>& dims) {
    int64_t n = 1;
    for (int d : dims) n *= d;
    return n;
}

}  // namespace sft
