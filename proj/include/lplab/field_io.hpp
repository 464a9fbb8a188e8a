#ifndef LPLAB_FIELD_IO_HPP
#define LPLAB_FIELD_IO_HPP

#include <string>

#include "lplab/field.hpp"

namespace lplab {

// LPF1 container: 16-byte magic+version, little-endian u32 dim, u32 N,
// f64 L, u8 mean-zero flag, then N^d interleaved (re, im) f64 coefficients
// in standard FFT index order, row-major over axes. A JSON sidecar
// "<path>.json" carries grid metadata and provenance.
void write_lpf1(const std::string& path, const SpectralField& f,
                const std::string& provenance = "");
SpectralField read_lpf1(const std::string& path);

} // namespace lplab

#endif
