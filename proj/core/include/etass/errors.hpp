#pragma once

#include <stdexcept>
#include <string>

namespace etass {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// gf2
class SubspaceNotContained : public Error
{
public:
    using Error::Error;
};

// algebra
class NormalizationFailure : public Error
{
public:
    using Error::Error;
};

class MissingRule : public Error
{
public:
    using Error::Error;
};

// bockstein / adams
class RepresentativeNotMonomial : public Error
{
public:
    using Error::Error;
};

/// A differential or rho-multiple landed outside the page it should live on.
class PageInconsistency : public Error
{
public:
    using Error::Error;
};

// homotopy
class MultipleTowers : public Error
{
public:
    using Error::Error;
};

class WrongStem : public Error
{
public:
    using Error::Error;
};

// charts
class UnsupportedFormat : public Error
{
public:
    using Error::Error;
};

} // namespace etass
