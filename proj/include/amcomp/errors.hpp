#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amcomp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `byte_offset` points at (or near) the offending byte;
/// `line` is 1-based and 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t byte_offset = 0, std::size_t line = 0)
        : Error(msg), byte_offset(byte_offset), line(line) {}
    std::size_t byte_offset;
    std::size_t line;
};

class EmptyGeometry : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateCorrespondences : public Error {
public:
    using Error::Error;
};

/// Invalid parametric geometry; `entity` names the offending profile segment or cut.
class InvalidGeometry : public Error {
public:
    InvalidGeometry(const std::string& msg, std::string entity)
        : Error(msg + " [entity: " + entity + "]"), entity(std::move(entity)) {}
    std::string entity;
};

/// Expression parse/evaluation error; `column` is 1-based in the source text.
class ExprError : public Error {
public:
    ExprError(const std::string& msg, std::size_t column)
        : Error(msg + " (column " + std::to_string(column) + ")"), column(column) {}
    std::size_t column;
};

class ExprSyntaxError : public ExprError {
public:
    using ExprError::ExprError;
};

class DivisionByZero : public ExprError {
public:
    using ExprError::ExprError;
};

class UnknownParameter : public ExprError {
public:
    UnknownParameter(const std::string& name, std::size_t column)
        : ExprError("unknown parameter '" + name + "'", column), name(name) {}
    std::string name;
};

/// A probe region produced fewer qualifying samples than required.
class InsufficientSamples : public Error {
public:
    InsufficientSamples(const std::string& msg, std::string region)
        : Error(msg + " [region: " + region + "]"), region(std::move(region)) {}
    std::string region;
};

class FitDiverged : public Error {
public:
    using Error::Error;
};

/// Displacement field does not align with the mesh it is applied to.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// Replay input does not match the nominal mesh topology.
class TopologyMismatch : public Error {
public:
    using Error::Error;
};

/// Compensated and measured dimensions coincide, so the factor update is undefined.
class CfSingularity : public Error {
public:
    using Error::Error;
};

class InvalidTarget : public Error {
public:
    using Error::Error;
};

class InvalidDimensionUpdate : public Error {
public:
    InvalidDimensionUpdate(const std::string& msg, std::string kdc_id)
        : Error(msg + " [kdc: " + kdc_id + "]"), kdc_id(std::move(kdc_id)) {}
    std::string kdc_id;
};

} // namespace amcomp
