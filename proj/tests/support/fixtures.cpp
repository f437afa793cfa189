#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "eda/special.hpp"

namespace eda::testing {

DataFrame random_frame(std::uint64_t seed, std::size_t rows, std::size_t numeric, std::size_t categorical,
                       double missing, std::size_t chunk_rows) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ColumnInput> inputs;
  for (std::size_t j = 0; j < numeric; ++j) {
    NumericCells cells(rows);
    const double mu = std::uniform_real_distribution<double>(-10, 10)(rng);
    const double sigma = std::uniform_real_distribution<double>(0.5, 5)(rng);
    std::normal_distribution<double> normal(mu, sigma);
    std::lognormal_distribution<double> lognormal(0.0, 1.0);
    std::uniform_int_distribution<int> small(0, 4);
    for (std::size_t i = 0; i < rows; ++i) {
      double v = 0;
      switch (j % 6) {
        case 0: v = normal(rng); break;
        case 1: v = std::uniform_real_distribution<double>(-5, 5)(rng); break;
        case 2: v = small(rng); break;
        case 3: v = lognormal(rng); break;
        case 4:
          v = normal(rng);
          if (unit(rng) < 0.01) v = unit(rng) < 0.5 ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity();
          break;
        default: v = 1e6 + normal(rng); break;
      }
      if (unit(rng) >= missing) cells[i] = v;
    }
    inputs.push_back({"n" + std::to_string(j), std::move(cells)});
  }
  for (std::size_t j = 0; j < categorical; ++j) {
    const int k = 2 + static_cast<int>((j * 3) % 9);
    std::uniform_int_distribution<int> pick(0, k - 1);
    CategoricalCells cells(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const int c = std::min(pick(rng), pick(rng));  // skewed frequencies
      if (unit(rng) >= missing) cells[i] = "c" + std::to_string(j) + "_" + std::to_string(c);
    }
    inputs.push_back({"c" + std::to_string(j), std::move(cells)});
  }
  return make_frame(inputs, chunk_rows, "random-" + std::to_string(seed));
}

DataFrame house_frame(std::uint64_t seed, std::size_t rows, std::size_t chunk_rows) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  NumericCells price(rows), size(rows), rooms(rows), year(rows);
  CategoricalCells city(rows), zone(rows);
  const char* cities[] = {"Vancouver", "Burnaby", "Richmond", "Surrey", "Delta"};
  for (std::size_t i = 0; i < rows; ++i) {
    const double s = 60 + 40 * std::abs(noise(rng)) + 20 * unit(rng);
    size[i] = std::round(s * 10) / 10;
    rooms[i] = std::max(1.0, std::round(s / 30 + noise(rng) * 0.5));
    year[i] = 1950 + std::floor(unit(rng) * 70);
    const std::size_t c = static_cast<std::size_t>(std::min(unit(rng), unit(rng)) * 5);
    const double p = 5000 * s * (1 + 0.1 * static_cast<double>(4 - c)) * std::exp(0.15 * noise(rng));
    if (unit(rng) > 0.04) price[i] = std::round(p);
    if (unit(rng) > 0.08) city[i] = cities[c];
    zone[i] = unit(rng) < 0.3 ? "commercial" : "residential";
  }
  return make_frame({{"price", price}, {"size", size}, {"rooms", rooms}, {"year", year}, {"city", city}, {"zone", zone}},
                    chunk_rows, "house");
}

std::vector<double> stratified_normal(std::size_t n, std::uint64_t seed) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = special::normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
  std::mt19937_64 rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

std::vector<double> fair_die(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i % 6 + 1);
  return v;
}

std::vector<double> lognormal_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

DataFrame numeric_frame(const std::string& name, const std::vector<double>& values, std::size_t chunk_rows) {
  NumericCells cells(values.begin(), values.end());
  return make_frame({{name, cells}}, chunk_rows, name);
}

std::vector<double> finite_values(const Column& col) {
  std::vector<double> out;
  for (const auto& c : numeric_cells(col))
    if (c && std::isfinite(*c)) out.push_back(*c);
  return out;
}

std::string write_temp_csv(const DataFrame& df, const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "eda-tests";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream f(path);
  const auto names = df.names();
  for (std::size_t j = 0; j < names.size(); ++j) f << (j ? "," : "") << names[j];
  f << '\n';
  std::vector<NumericCells> nums(df.width());
  std::vector<CategoricalCells> cats(df.width());
  for (std::size_t j = 0; j < df.width(); ++j) {
    if (df.column(j).dtype == DType::Numerical)
      nums[j] = numeric_cells(df.column(j));
    else
      cats[j] = categorical_cells(df.column(j));
  }
  char buf[40];
  for (std::size_t i = 0; i < df.rows(); ++i) {
    for (std::size_t j = 0; j < df.width(); ++j) {
      if (j) f << ',';
      if (df.column(j).dtype == DType::Numerical) {
        if (!nums[j][i]) continue;
        const double v = *nums[j][i];
        if (std::isinf(v)) {
          f << (v > 0 ? "inf" : "-inf");
        } else {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          f << buf;
        }
      } else if (cats[j][i]) {
        f << *cats[j][i];
      }
    }
    f << '\n';
  }
  return path;
}

}  // namespace eda::testing
