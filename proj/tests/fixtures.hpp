#pragma once

#include <array>
#include <string>
#include <vector>

#include "fearconn/connectedness.hpp"

namespace fixtures {

// Static decomposition matrices for the ten U.S. financial institutions
// (percent entries) together with the published FROM/TO/NET aggregates.
inline const std::vector<std::string> kBankNames = {
    "JPM", "BAC", "WFC", "CITI", "GS", "MS", "USB", "AXP", "PNC", "BK"};

using Grid = std::array<std::array<double, 10>, 10>;

inline const Grid kAggregateGrid = {{
    {46.98, 2.16, 3.58, 3.26, 10.36, 9.46, 8.69, 6.63, 2.06, 6.77},
    {4.03, 56.06, 3.04, 3.28, 8.20, 7.05, 5.67, 4.99, 1.65, 5.98},
    {6.93, 1.78, 44.41, 4.61, 11.11, 6.37, 7.19, 5.63, 5.66, 6.26},
    {5.23, 2.09, 3.44, 54.67, 8.92, 7.20, 5.69, 5.44, 2.33, 4.94},
    {6.34, 2.25, 4.81, 5.54, 35.55, 18.29, 9.35, 7.36, 2.29, 8.19},
    {6.91, 2.58, 4.12, 5.11, 20.29, 34.34, 8.59, 6.40, 2.86, 8.74},
    {8.23, 2.26, 4.97, 4.34, 13.62, 9.67, 36.33, 7.67, 3.48, 9.39},
    {7.14, 2.51, 4.21, 4.45, 12.65, 11.47, 10.42, 35.71, 3.02, 8.37},
    {5.82, 1.34, 4.93, 3.11, 8.69, 7.53, 6.85, 4.22, 49.89, 7.57},
    {7.19, 2.90, 4.25, 4.21, 14.97, 14.50, 10.38, 7.77, 3.87, 29.91},
}};
inline const std::array<double, 10> kAggregateFrom = {
    53.01, 43.93, 55.58, 45.32, 64.44, 65.65, 63.66, 64.28, 50.10, 70.08};
inline const std::array<double, 10> kAggregateTo = {
    57.86, 19.92, 37.38, 37.96, 108.85, 91.57, 72.87, 56.14, 27.25, 66.25};
inline const std::array<double, 10> kAggregateNet = {
    4.84, -24.01, -18.19, -7.35, 44.40, 25.92, 9.21, -8.13, -22.84, -3.82};
inline constexpr double kAggregateTotal = 57.61;

inline const Grid kPositiveGrid = {{
    {73.69, 0.79, 1.55, 1.67, 4.11, 5.28, 5.53, 2.79, 0.73, 3.82},
    {0.90, 79.51, 1.85, 3.36, 2.28, 2.52, 0.80, 3.63, 0.90, 4.20},
    {3.04, 0.88, 72.25, 3.53, 6.20, 1.39, 3.80, 4.13, 1.01, 3.70},
    {0.72, 2.05, 2.10, 80.67, 4.04, 1.73, 1.48, 2.79, 1.88, 2.49},
    {2.50, 1.09, 4.78, 4.05, 58.31, 12.18, 5.95, 5.31, 1.15, 4.63},
    {4.05, 1.76, 2.39, 3.56, 17.76, 53.15, 4.03, 3.64, 1.88, 7.72},
    {4.72, 0.39, 4.00, 2.94, 7.15, 2.66, 63.83, 5.59, 2.53, 6.13},
    {2.70, 1.70, 3.90, 2.83, 7.81, 4.79, 5.98, 63.34, 1.95, 4.96},
    {2.61, 0.92, 2.77, 3.78, 3.92, 3.80, 4.90, 4.05, 68.42, 4.77},
    {3.67, 2.17, 3.46, 2.61, 7.71, 10.08, 6.52, 5.98, 2.90, 54.85},
}};
inline constexpr double kPositiveTotal = 33.19;

inline const Grid kNegativeGrid = {{
    {73.08, 1.50, 0.54, 3.86, 5.04, 3.45, 6.28, 3.97, 0.69, 1.54},
    {0.89, 80.11, 3.92, 2.68, 2.57, 4.19, 2.79, 0.45, 0.91, 1.45},
    {1.79, 2.75, 73.53, 4.57, 5.42, 1.83, 2.08, 2.69, 2.99, 2.29},
    {2.43, 2.33, 2.82, 80.73, 2.42, 2.57, 1.71, 2.10, 1.09, 1.76},
    {1.43, 0.91, 3.40, 2.80, 71.83, 10.39, 4.13, 3.01, 0.58, 1.48},
    {2.85, 2.24, 2.25, 3.71, 15.69, 65.02, 2.90, 1.32, 0.83, 3.15},
    {6.54, 1.89, 1.69, 3.07, 6.43, 3.33, 71.05, 4.05, 0.68, 1.20},
    {3.13, 0.24, 3.20, 4.96, 8.58, 2.30, 6.58, 67.32, 1.80, 1.84},
    {2.57, 1.48, 2.75, 1.61, 4.77, 0.94, 1.32, 2.49, 80.72, 1.28},
    {1.23, 2.60, 3.79, 3.61, 4.04, 5.79, 1.47, 1.82, 1.27, 74.32},
}};
inline constexpr double kNegativeTotal = 26.22;
inline constexpr double kAfcTotal = 6.97;

inline fearconn::FevdTable table_from_grid(const Grid& grid) {
  fearconn::FevdTable t;
  t.H = 12;
  t.names = kBankNames;
  t.theta.resize(10, 10);
  for (int j = 0; j < 10; ++j)
    for (int k = 0; k < 10; ++k) t.theta(j, k) = grid[j][k] / 100.0;
  t.theta_raw = t.theta;
  return t;
}

}  // namespace fixtures
