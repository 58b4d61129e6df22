// fingerprint.hpp: 64-bit FNV-1a content hashes rendered as 16 hex digits

#pragma once

#include "geamk/types.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <string_view>

namespace geamk {

class Fnv1a {
public:
    void update(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void update(std::string_view s) { update(s.data(), s.size()); }
    void update(double x) {
        unsigned char buf[sizeof(double)];
        std::memcpy(buf, &x, sizeof(double));
        update(buf, sizeof buf);
    }
    void update(const RealMatrix& m) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) update(m(i, j));
    }

    std::uint64_t value() const { return h_; }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::string fingerprint(std::string_view content) {
    Fnv1a h;
    h.update(content);
    return h.hex();
}

}  // namespace geamk
