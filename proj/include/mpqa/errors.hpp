#pragma once

#include <stdexcept>
#include <string>

namespace mpqa {

// Parameter point outside the usable region: q <= 0, a pole of the q formula,
// or a search range containing no admissible lambda at all.
class inadmissible_error : public std::runtime_error {
public:
    explicit inadmissible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// q <= 0: the approximant denominator would vanish on the real axis.
class defect_error : public inadmissible_error {
public:
    explicit defect_error(const std::string& msg) : inadmissible_error(msg) {}
};

// Denominator of the closed-form q vanishes at this (lambda, nu).
class singularity_error : public inadmissible_error {
public:
    explicit singularity_error(const std::string& msg) : inadmissible_error(msg) {}
};

class no_admissible_lambda_error : public inadmissible_error {
public:
    explicit no_admissible_lambda_error(const std::string& msg) : inadmissible_error(msg) {}
};

// Numeric breakdown, as opposed to a bad parameter point.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

class overflow_error : public numeric_error {
public:
    explicit overflow_error(const std::string& msg) : numeric_error(msg) {}
};

class convergence_error : public numeric_error {
public:
    explicit convergence_error(const std::string& msg) : numeric_error(msg) {}
};

class singular_system_error : public numeric_error {
public:
    explicit singular_system_error(const std::string& msg) : numeric_error(msg) {}
};

} // namespace mpqa
