#ifndef SUPERLAX_ERROR_HPP
#define SUPERLAX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace superlax
{

class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class family_mismatch : public error
{
public:
    using error::error;
};

class unknown_generator : public error
{
public:
    using error::error;
};

// Raised when a requested coefficient lies below the known floor of a
// truncated series.
class truncation_error : public error
{
public:
    using error::error;
};

class no_root_error : public error
{
public:
    using error::error;
};

class kind_mismatch : public error
{
public:
    using error::error;
};

class parity_error : public error
{
public:
    using error::error;
};

class shape_mismatch : public error
{
public:
    using error::error;
};

class parse_error : public error
{
public:
    parse_error(const std::string &msg, int line, int column)
        : error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)), line_(line),
          column_(column)
    {
    }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace superlax

#endif
