#pragma once

#include "padic/lcfun.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace padic {

struct ParseError : std::runtime_error {
    explicit ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

// Function file format (one cell per line, grid order, reduced rationals):
//
//   padic-lcfn v1
//   p 2
//   n 1
//   gamma_struct 1
//   gamma_res -1
//   c_inf 0/1
//   cells 4
//   2^1:-1: 1/2
//   ...
inline void write_lcfunction(std::ostream& os, const LCFunction& f) {
    os << "padic-lcfn v1\n";
    os << "p " << f.params().p << "\n";
    os << "n " << f.params().n << "\n";
    os << "gamma_struct " << f.grid.gamma_struct << "\n";
    os << "gamma_res " << f.grid.gamma_res << "\n";
    os << "c_inf " << to_string(f.c_inf) << "\n";
    os << "cells " << f.cells.size() << "\n";
    auto e = f.grid.enumerator();
    for (size_t i = 0; i < f.cells.size(); ++i)
        os << to_string(e.address(i)) << " " << to_string(f.cells[i]) << "\n";
}

inline std::string to_text(const LCFunction& f) {
    std::ostringstream os;
    write_lcfunction(os, f);
    return os.str();
}

namespace detail {
inline std::string expect_field(const std::string& line, const std::string& key, size_t lineno) {
    if (line.rfind(key + " ", 0) != 0)
        throw ParseError(lineno, "expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
}
}  // namespace detail

inline LCFunction read_lcfunction(std::istream& is) {
    size_t lineno = 0;
    auto next_line = [&]() -> std::string {
        std::string line;
        if (!std::getline(is, line)) throw ParseError(lineno + 1, "unexpected end of input");
        ++lineno;
        return line;
    };
    try {
        if (next_line() != "padic-lcfn v1") throw ParseError(lineno, "bad magic header");
        std::uint32_t p = static_cast<std::uint32_t>(
            std::stoul(detail::expect_field(next_line(), "p", lineno)));
        std::uint32_t n = static_cast<std::uint32_t>(
            std::stoul(detail::expect_field(next_line(), "n", lineno)));
        FieldParams fp(p, n);
        int gs = std::stoi(detail::expect_field(next_line(), "gamma_struct", lineno));
        int gr = std::stoi(detail::expect_field(next_line(), "gamma_res", lineno));
        Rational c_inf = parse_rational(detail::expect_field(next_line(), "c_inf", lineno));
        size_t count = std::stoul(detail::expect_field(next_line(), "cells", lineno));
        CellGrid grid(fp, gs, gr);
        if (count != grid.cell_count()) throw ParseError(lineno, "cell count does not match the grid");
        auto e = grid.enumerator();
        std::vector<Rational> cells(count);
        for (size_t i = 0; i < count; ++i) {
            std::string line = next_line();
            auto space = line.find(' ');
            if (space == std::string::npos) throw ParseError(lineno, "expected '<address> <value>'");
            BallAddress addr = parse_ball(line.substr(0, space));
            if (addr != e.address(i))
                throw ParseError(lineno, "cell address out of canonical order: " + line.substr(0, space));
            cells[i] = parse_rational(line.substr(space + 1));
        }
        return LCFunction(std::move(grid), std::move(cells), c_inf);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(lineno, ex.what());
    }
}

inline LCFunction from_text(const std::string& text) {
    std::istringstream is(text);
    return read_lcfunction(is);
}

}  // namespace padic
