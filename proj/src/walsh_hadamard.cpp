#include "ugspec/generators.hpp"

#include "ugspec/errors.hpp"

#include <bit>

namespace ugspec {

FourierSpectrum walsh_hadamard_spectrum(std::span<const double> f) {
    const std::size_t N = f.size();
    if (N == 0 || !std::has_single_bit(N))
        throw PreconditionError("Walsh-Hadamard transform needs a power-of-two length");
    FourierSpectrum out;
    out.group_dim = static_cast<unsigned>(std::countr_zero(N));
    out.values.assign(f.begin(), f.end());
    auto &a = out.values;
    for (std::size_t h = 1; h < N; h <<= 1) {
        for (std::size_t i = 0; i < N; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
    }
    return out;
}

SymmetricMatrix cayley_matrix(std::span<const double> f) {
    const std::size_t N = f.size();
    if (N == 0 || !std::has_single_bit(N))
        throw PreconditionError("Cayley weight function needs a power-of-two length");
    SymmetricMatrix A(N);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = x; y < N; ++y)
            A.set(x, y, f[x ^ y]);
    return A;
}

} // namespace ugspec
