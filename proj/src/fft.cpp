#include "lplab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace lplab {
namespace {

struct PlanKey {
    int dim;
    int n;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (dim != o.dim) return dim < o.dim;
        if (n != o.n) return n < o.n;
        return sign < o.sign;
    }
};

// FFTW planning is not thread-safe; executing a cached plan on new arrays is.
class PlanCache {
  public:
    fftw_plan get(int dim, int n, int sign, fftw_complex* in, fftw_complex* out) {
        std::lock_guard<std::mutex> lock(mu_);
        PlanKey key{dim, n, sign};
        auto it = plans_.find(key);
        if (it == plans_.end()) {
            int dims[3] = {n, n, n};
            fftw_plan p = fftw_plan_dft(dim, dims, in, out, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
            it = plans_.emplace(key, p).first;
        }
        return it->second;
    }

  private:
    std::mutex mu_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<std::complex<double>> run(const Grid& g,
                                      const std::vector<std::complex<double>>& in,
                                      int sign) {
    std::vector<std::complex<double>> out(in.size());
    auto* pin = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan p = cache().get(g.dim, g.n, sign, pin, pout);
    fftw_execute_dft(p, pin, pout);
    return out;
}

} // namespace

std::vector<std::complex<double>> to_physical(const Grid& g,
                                              const std::vector<std::complex<double>>& coef) {
    return run(g, coef, FFTW_BACKWARD);
}

std::vector<std::complex<double>> to_spectral(const Grid& g,
                                              const std::vector<std::complex<double>>& phys) {
    auto out = run(g, phys, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& c : out) c *= scale;
    return out;
}

} // namespace lplab
