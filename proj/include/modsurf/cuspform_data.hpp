#pragma once

#include <string>
#include <vector>

#include "modsurf/eisenstein.hpp"
#include "modsurf/fourier_field.hpp"
#include "modsurf/numerics.hpp"

namespace modsurf {

enum class Parity { Even, Odd };

// f(x+iy) = sum_{n != 0} c_n 2 sqrt(y) K_{iR}(2 pi |n| y) e(n x), with
// c_{-n} = c_n (even) or -c_n (odd). The c_n are Hecke eigenvalues, c_1 = 1.
struct CuspFormRecord {
    double R = 0.0;
    Parity parity = Parity::Even;
    std::vector<cplx> coefficients;  // c_1 .. c_N
    std::string normalization = "hecke_c1_equals_1";
    bool flagged = false;  // set when validation fails

    cplx s() const { return {0.5, R}; }
    cplx eigenvalue() const { return s() * (s() - 1.0); }
    // c_n for n != 0, applying the parity rule to negative n.
    cplx coefficient(long long n) const;
    int count() const { return static_cast<int>(coefficients.size()); }
};

void validate_record(const CuspFormRecord& f);

// Format: '#' starts a comment; each record is one line
//   R parity N c_1 ... c_N
// with parity "even" or "odd" and each c_n either "re" or "re,im".
std::vector<CuspFormRecord> parse_cuspforms(const std::string& text);
std::vector<CuspFormRecord> load_cuspforms(const std::string& path);
std::string format_cuspform(const CuspFormRecord& f);
void save_cuspforms(const std::string& path, const std::vector<CuspFormRecord>& forms,
                    const std::string& header = "");

// Bundled data file, overridable through MODSURF_CUSPFORMS.
std::string default_cuspform_path();

FourierRow cuspform_row(const CuspFormRecord& f, double y);
Field cuspform_field(const CuspFormRecord& f);
// Evaluates the raw expansion at z itself, without reduction.
cplx cuspform_eval_raw(const CuspFormRecord& f, UpperHalfPoint z);
cplx cuspform_eval(const CuspFormRecord& f, UpperHalfPoint z, const EisensteinEvalConfig& cfg = {});

struct CuspValidationConfig {
    double fd_step = 1e-4;
    double tolerance = 1e-3;
};

struct CuspValidationReport {
    double eigenvalue_residual = 0.0;
    double automorphy_residual = 0.0;
    double hecke_residual = 0.0;  // max |c_mn - c_m c_n| over small coprime m, n
    bool ok = false;
};

CuspValidationReport validate_cuspform(const CuspFormRecord& f, const CuspValidationConfig& cfg = {});
// Runs validate_cuspform on each record and sets `flagged` accordingly.
void flag_invalid(std::vector<CuspFormRecord>& forms, const CuspValidationConfig& cfg = {});

}  // namespace modsurf
