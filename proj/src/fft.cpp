#include "vvmhd/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace vvmhd {
namespace {

// One cached plan pair per grid size.  FFTW_ESTIMATE keeps plan selection
// deterministic across runs; the scratch buffers are owned here and guarded by
// a mutex, so transforms are safe to call from anywhere (serially executed).
struct PlanEntry {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  long count = 0;

  explicit PlanEntry(int n) {
    count = static_cast<long>(n) * n * n;
    in = fftw_alloc_complex(count);
    out = fftw_alloc_complex(count);
    forward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PlanEntry() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(in);
    fftw_free(out);
  }
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;
};

std::mutex plan_mutex;

PlanEntry& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanEntry>> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<PlanEntry>(n)).first;
  return *it->second;
}

// FFTW's new-array execute needs the replacement arrays to be in the same
// alignment class as the ones the plan was created with.
bool plan_aligned(const PlanEntry& p, const void* q) {
  return fftw_alignment_of(
             static_cast<double*>(const_cast<void*>(q))) ==
         fftw_alignment_of(reinterpret_cast<double*>(p.in));
}

fftw_complex* as_fftw(std::complex<double>* q) {
  return reinterpret_cast<fftw_complex*>(q);
}

void run_c2c(const GridSpec& g, const std::complex<double>* in,
             std::complex<double>* out, bool forward) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanEntry& p = plans_for(g.n);
  fftw_plan plan = forward ? p.forward : p.backward;
  // Out-of-place c2c transforms leave the input array untouched, so executing
  // directly on the caller's buffers is safe whenever alignment permits.
  fftw_complex* fin = as_fftw(const_cast<std::complex<double>*>(in));
  if (in != out && plan_aligned(p, in) && plan_aligned(p, out)) {
    fftw_execute_dft(plan, fin, as_fftw(out));
    return;
  }
  std::memcpy(p.in, static_cast<const void*>(in),
              sizeof(fftw_complex) * p.count);
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(out), p.out,
              sizeof(fftw_complex) * p.count);
}

}  // namespace

namespace fft_detail {

void forward_c2c(const GridSpec& g, const std::complex<double>* in,
                 std::complex<double>* out) {
  run_c2c(g, in, out, true);
}

void backward_c2c(const GridSpec& g, const std::complex<double>* in,
                  std::complex<double>* out) {
  run_c2c(g, in, out, false);
}

}  // namespace fft_detail

SpectralVectorField transform(const PhysicalVectorField& f) {
  const GridSpec& g = f.grid;
  const long size = g.size();
  SpectralVectorField out(g);
  const double norm = 1.0 / static_cast<double>(size);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    PlanEntry& p = plans_for(g.n);
    for (int c = 0; c < 3; ++c) {
      const double* samples = f.component(c);
      for (long i = 0; i < size; ++i) {
        if (!std::isfinite(samples[i])) {
          std::ostringstream msg;
          msg << "transform: non-finite sample in component " << c
              << " at flat index " << i;
          throw std::domain_error(msg.str());
        }
        // Fold the 1/n^3 normalization into the staging copy.
        p.in[i][0] = samples[i] * norm;
        p.in[i][1] = 0.0;
      }
      std::complex<double>* dest = out.component(c);
      if (plan_aligned(p, dest)) {
        fftw_execute_dft(p.forward, p.in, as_fftw(dest));
      } else {
        fftw_execute(p.forward);
        std::memcpy(static_cast<void*>(dest), p.out,
                    sizeof(fftw_complex) * p.count);
      }
    }
  }
  enforce_hermitian(out);
  return out;
}

PhysicalVectorField inverse_transform(const SpectralVectorField& f) {
  const GridSpec& g = f.grid();
  const long size = g.size();
  PhysicalVectorField out(g);
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanEntry& p = plans_for(g.n);
  for (int c = 0; c < 3; ++c) {
    const std::complex<double>* src = f.component(c);
    fftw_complex* fsrc = as_fftw(const_cast<std::complex<double>*>(src));
    if (!plan_aligned(p, src)) {
      std::memcpy(p.in, static_cast<const void*>(src),
                  sizeof(fftw_complex) * p.count);
      fsrc = p.in;
    }
    fftw_execute_dft(p.backward, fsrc, p.out);
    double* samples = out.component(c);
    for (long i = 0; i < size; ++i) samples[i] = p.out[i][0];
  }
  return out;
}

double imag_residue(const SpectralVectorField& f) {
  const GridSpec& g = f.grid();
  const long size = g.size();
  double max_im = 0.0, max_re = 0.0;
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanEntry& p = plans_for(g.n);
  for (int c = 0; c < 3; ++c) {
    const std::complex<double>* src = f.component(c);
    fftw_complex* fsrc = as_fftw(const_cast<std::complex<double>*>(src));
    if (!plan_aligned(p, src)) {
      std::memcpy(p.in, static_cast<const void*>(src),
                  sizeof(fftw_complex) * p.count);
      fsrc = p.in;
    }
    fftw_execute_dft(p.backward, fsrc, p.out);
    for (long i = 0; i < size; ++i) {
      max_im = std::max(max_im, std::abs(p.out[i][1]));
      max_re = std::max(max_re, std::abs(p.out[i][0]));
    }
  }
  return max_re == 0.0 ? 0.0 : max_im / max_re;
}

void enforce_hermitian(SpectralVectorField& f) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  std::vector<int> rev(n);
  for (int i = 0; i < n; ++i) rev[i] = (n - i) % n;
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* a = f.component(c);
    for (int i = 0; i < n; ++i) {
      const long row_i = static_cast<long>(i) * n;
      const long prow_i = static_cast<long>(rev[i]) * n;
      for (int j = 0; j < n; ++j) {
        const long row_j = (row_i + j) * n;
        const long prow_j = (prow_i + rev[j]) * n;
        for (int k = 0; k < n; ++k) {
          const long idx = row_j + k;
          const long pidx = prow_j + rev[k];
          if (idx > pidx) continue;  // each pair handled once
          if (idx == pidx) {
            a[idx] = std::complex<double>(a[idx].real(), 0.0);
          } else {
            const std::complex<double> avg =
                0.5 * (a[idx] + std::conj(a[pidx]));
            a[idx] = avg;
            a[pidx] = std::conj(avg);
          }
        }
      }
    }
  }
}

void zero_mean(SpectralVectorField& f) {
  for (int c = 0; c < 3; ++c) f.component(c)[0] = 0.0;
}

}  // namespace vvmhd
