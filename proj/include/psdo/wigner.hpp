#pragma once

// Short-time Fourier transforms and A-Wigner distributions on Z_n^d, plus
// the discrete identities tying them to each other and to Op_A.

#include "psdo/grid.hpp"
#include "psdo/quantizer.hpp"
#include "psdo/rng.hpp"

#include <cstddef>

namespace psdo {

enum class TfKind { stft, wigner };

/// Array over position x frequency, same layout as Symbol.
struct TimeFrequencyArray {
  GridSpec grid;
  CVec data;
  TfKind kind = TfKind::stft;

  cplx& at(std::size_t j, std::size_t k) noexcept { return data[j * grid.size() + k]; }
  const cplx& at(std::size_t j, std::size_t k) const noexcept { return data[j * grid.size() + k]; }
  Symbol as_symbol() const { return Symbol(grid, data); }
};

/// Array over (x, xi, eta, y), each a d-dimensional block, row-major.
struct FourDArray {
  GridSpec grid;
  CVec data;

  std::size_t index(std::size_t x, std::size_t xi, std::size_t eta, std::size_t y) const noexcept {
    const std::size_t N = grid.size();
    return ((x * N + xi) * N + eta) * N + y;
  }
  cplx& at(std::size_t x, std::size_t xi, std::size_t eta, std::size_t y) noexcept { return data[index(x, xi, eta, y)]; }
  const cplx& at(std::size_t x, std::size_t xi, std::size_t eta, std::size_t y) const noexcept {
    return data[index(x, xi, eta, y)];
  }
};

/// Largest n^{4d} materialized as a FourDArray.
inline constexpr std::size_t kMax4dEntries = 1'500'000;
void check_4d_size(const GridSpec& grid);

/// V_phi f(j, k) = n^{-d/2} sum_y f(y) conj(phi(y - j)) e^{-2 pi i <y,k>/n}.
TimeFrequencyArray stft(const Signal& f, const Signal& phi);

/// The same transform on the doubled grid Z_n^{2d}: a symbol a(x, xi) is a
/// signal in (x, xi), and the result is indexed (x, xi, eta, y) with eta
/// dual to x and y dual to xi.
FourDArray stft_symbol(const Symbol& a, const Symbol& Phi);
/// One entry of stft_symbol without materializing the array.
cplx stft_symbol_entry(const Symbol& a, const Symbol& Phi, std::size_t x, std::size_t xi, std::size_t eta,
                       std::size_t y);

/// W^A_{f1,f2}. Mod mode sums f1(j+Ay) conj f2(j+(A-I)y) directly; real mode
/// is n^{-d/2} dequantize(f1 f2^*, A).
TimeFrequencyArray wigner(const Signal& f1, const Signal& f2, const MatrixParam& A);

/// max |W_{f,phi}(j,k) - c e^{2 pi i s <j,k>/n} V_{phi check} f(2j, 2k)|
/// in mod mode, where W is the Weyl distribution (A = 2^{-1} I mod n).
double weyl_wigner_stft_deviation(const Signal& f, const Signal& phi, double c, long s);
/// The relation with the grid's own constants c = 1, s = 2.
double weyl_wigner_stft_relation_check(const Signal& f, const Signal& phi);

/// Left side of the STFT-of-Wigner lemma: stft_symbol(W^A_{f,g}, W^A_{phi,psi}).
FourDArray stft_of_wigner(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                          const MatrixParam& A);
/// Right side: e^{-2 pi i <y,xi>/n} V_phi f(x - Ay, xi - (A^T - I)eta)
/// conj V_psi g(x - (A - I)y, xi - A^T eta).
FourDArray stft_of_wigner_rhs(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                              const MatrixParam& A);
/// Both sides at `samples` random 4d indices; usable when n^{4d} is too large.
double stft_of_wigner_sampled_deviation(const Signal& f, const Signal& g, const Signal& phi, const Signal& psi,
                                        const MatrixParam& A, Rng& rng, std::size_t samples);

/// max |V_{T_A phi}(T_A a) - e^{2 pi i <Ay,eta>/n} V_phi a(x + Ay, xi + A^T eta, eta, y)|.
double expop_stft_check(const Symbol& a, const Symbol& phi, const MatrixParam& A);
/// The same deviation at `samples` random 4d indices.
double expop_stft_sampled_deviation(const Symbol& a, const Symbol& phi, const MatrixParam& A, Rng& rng,
                                    std::size_t samples);

/// l2-normalized periodized Gaussian, tensor product over the axes.
Signal default_window(const GridSpec& grid);
/// The same Gaussian on the doubled grid, used as a symbol window.
Symbol default_symbol_window(const GridSpec& grid);

}  // namespace psdo
