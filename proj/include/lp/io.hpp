#pragma once

#include <string>

#include "json.hpp"
#include "lp/counterexample.hpp"
#include "lp/euler.hpp"
#include "lp/norms.hpp"
#include "lp/para.hpp"

namespace lp {

using json = nlohmann::ordered_json;

inline constexpr const char* kCodeVersion = "lpeuler 1.0.0";

// round to 12 significant digits so serialized numbers are stable against
// last-bit noise while still round-tripping every reported tolerance
double r12(double v);

// --- LPF1 field files -----------------------------------------------------
// magic "LPF1", little-endian u32 version=1, u32 d=2, u32 N, f64 L,
// u32 ncomp, u8 domain (0 spectral / 1 real), then ncomp*N^2 complex
// samples as f64 (re, im) pairs, component-major, row-major, FFT index
// order. A `<path>.meta.json` sidecar records provenance.
void write_lpf1(const std::string& path, const SpectralField& f,
                const json& provenance);
void write_lpf1(const std::string& path, const RealField& f,
                const json& provenance);
SpectralField read_lpf1_spectral(const std::string& path);
RealField read_lpf1_real(const std::string& path);

// --- report serialization ---------------------------------------------------
json to_json(const NormReport& r);
json to_json(const MechanismConstants& m);
json to_json(const InteractionTable& t);
json to_json(const PeriodizationReport& p);
json sparse_to_json(const SparseSpectrum& s);
SparseSpectrum sparse_from_json(const json& j, const TorusGrid& g);

std::string shell_bound_csv(const ShellBoundReport& r);
std::string trace_csv(const TraceRecord& t);
json trace_summary(const TraceRecord& t);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace lp
