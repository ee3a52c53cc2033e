#pragma once

// Committed oracle reference values and the check of the closed forms
// against them.
//
// File layout: '#' header lines, one of which is "# regulator <fingerprint>",
// then whitespace separated rows
//   r y alpha quantity re im error_estimate fingerprint
// with quantity one of A, X, Y.

#include <optional>
#include <string>
#include <vector>

#include "orbit/amplitudes.hpp"
#include "orbit/cerf.hpp"
#include "orbit/oracle.hpp"
#include "orbit/params.hpp"

namespace orbit {

struct CorpusRow {
    double r = 0.0;
    double y = 0.0;
    double alpha = 0.0;
    std::string quantity;
    Complex value;
    double error_estimate = 0.0;
    std::string fingerprint;
};

struct Corpus {
    int version = 1;
    std::string fingerprint;
    std::vector<CorpusRow> rows;
};

/// Throws InvalidArgument on a malformed file.
Corpus read_corpus(const std::string& path);
Corpus parse_corpus(const std::string& text);
std::string format_corpus(const Corpus& corpus);
void write_corpus(const std::string& path, const Corpus& corpus);

/// r, y, alpha each over {0.5, 1, 2}; alpha fastest.
std::vector<OrbitPoint> default_corpus_points();

/// Oracle A and X at each point, plus Y at (1, 1, 1). Throws on the first
/// oracle failure.
Corpus build_corpus(const std::vector<OrbitPoint>& points, const Regulator& reg = {}, int threads = 0);

struct VerifyRow {
    CorpusRow row;
    std::optional<Complex> closed;  ///< empty for quantities without a closed form
    double rel_error = 0.0;
    bool flagged = false;
};

struct VerifyReport {
    double tolerance = 0.0;
    std::string fingerprint;
    std::vector<VerifyRow> rows;
    int flagged = 0;

    bool ok() const { return flagged == 0; }
};

VerifyReport verify_corpus(const Corpus& corpus, const AmplitudeOptions& opt = {}, double tolerance = 1e-3);

}  // namespace orbit
