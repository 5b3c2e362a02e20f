#pragma once

#include <string>
#include <vector>

#include "dirac/gbdt.hpp"
#include "dirac/inverse.hpp"
#include "dirac/stability.hpp"
#include "dirac/verblunsky.hpp"

namespace dirac {

// File contract for every matrix in the CLI: a complex scalar is [re, im],
// a matrix is an array of rows.  Parse failures throw InputError.

std::string matrix_to_json(const Mat& M);

std::string triple_to_json(const AdmissibleTriple& t);
AdmissibleTriple triple_from_json_text(const std::string& text);

std::string realization_to_json(const Realization& r);
Realization realization_from_json_text(const std::string& text);

std::string potential_to_json(const std::vector<Mat>& C, const Signature& sig);
std::pair<std::vector<Mat>, Signature> potential_from_json_text(
    const std::string& text);

std::vector<Complex> grid_from_json_text(const std::string& text);

// CSV emitters.  All numbers print as %.17g so a report round-trips exactly;
// header row, LF endings.
std::string weyl_csv(const std::vector<Complex>& grid,
                     const std::vector<Mat>& values, const Signature& sig);
std::string asymptotics_csv(const AsymptoticsReport& rep);
std::string asymptotics_footer_json(const AsymptoticsReport& rep);
std::string stability_csv(const StabilityReport& rep);
std::string stability_summary_json(const StabilityReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dirac
