#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eda/frame.hpp"

// Deterministic datasets shared by the unit and acceptance tests.
namespace eda::testing {

/// Mixed frame: `numeric` numerical columns with assorted shapes (normal,
/// uniform, heavy ties, lognormal, with infinities) and `categorical`
/// categorical columns, about `missing` of the cells missing.
DataFrame random_frame(std::uint64_t seed, std::size_t rows, std::size_t numeric, std::size_t categorical,
                       double missing = 0.05, std::size_t chunk_rows = 65536);

/// Housing-style frame: price, size, rooms, year (numerical), city, zone
/// (categorical); price and city have missing cells.
DataFrame house_frame(std::uint64_t seed, std::size_t rows, std::size_t chunk_rows = 65536);

/// Standard normal quantiles at (i - 0.5) / n, shuffled with `seed`.
std::vector<double> stratified_normal(std::size_t n, std::uint64_t seed);

/// Cyclic die faces 1..6.
std::vector<double> fair_die(std::size_t n);

std::vector<double> lognormal_sample(std::size_t n, std::uint64_t seed);

DataFrame numeric_frame(const std::string& name, const std::vector<double>& values, std::size_t chunk_rows = 65536);

/// Finite, non-missing values of a numerical column in row order.
std::vector<double> finite_values(const Column& col);

std::string write_temp_csv(const DataFrame& df, const std::string& name);

}  // namespace eda::testing
