// Copyright 2026 The graded-qec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gqec {

/// Feasibility of {x >= 0 : A x = b} by the phase-one simplex method.
///
/// Dense tableau in long double with Bland's rule, so it terminates on
/// degenerate problems. Returns a basic feasible point, or nothing when the
/// phase-one optimum is positive. Intended for the small systems of the
/// partition search (tens of rows and columns).
class FeasibilityLp {
   public:
    using Real = long double;

    FeasibilityLp(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows, std::vector<Real>(cols, 0)), b_(rows, 0) {
    }

    void set(std::size_t row, std::size_t col, Real value) {
        a_.at(row).at(col) = value;
    }

    void set_rhs(std::size_t row, Real value) {
        b_.at(row) = value;
    }

    std::optional<std::vector<Real>> solve(Real eps = 1e-14L) const {
        // Columns: n_ structural, then m_ artificial; last column is the rhs.
        std::size_t width = n_ + m_ + 1;
        std::vector<std::vector<Real>> t(m_ + 1, std::vector<Real>(width, 0));
        std::vector<std::size_t> basis(m_);
        Real scale = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            Real sign = b_[i] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                t[i][j] = sign * a_[i][j];
                scale = std::max(scale, std::fabs(t[i][j]));
            }
            t[i][n_ + i] = 1;
            t[i][width - 1] = sign * b_[i];
            scale = std::max(scale, std::fabs(t[i][width - 1]));
            basis[i] = n_ + i;
        }
        Real tol = eps * scale;
        // Objective row: minimize the sum of artificials, expressed in the
        // non-basic columns.
        auto &obj = t[m_];
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < width; ++j) {
                if (j < n_ || j == width - 1) {
                    obj[j] -= t[i][j];
                }
            }
        }
        for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
            std::size_t enter = width;
            for (std::size_t j = 0; j + 1 < width; ++j) {
                if (obj[j] < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == width) {
                break;
            }
            std::size_t leave = m_;
            Real best = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t[i][enter] > tol) {
                    Real ratio = t[i][width - 1] / t[i][enter];
                    if (leave == m_ || ratio < best - tol || (std::fabs(ratio - best) <= tol && basis[i] < basis[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == m_) {
                // Unbounded direction; cannot happen for phase one.
                break;
            }
            Real pivot = t[leave][enter];
            for (auto &v : t[leave]) {
                v /= pivot;
            }
            for (std::size_t i = 0; i <= m_; ++i) {
                if (i == leave) {
                    continue;
                }
                Real f = t[i][enter];
                if (f != 0) {
                    for (std::size_t j = 0; j < width; ++j) {
                        t[i][j] -= f * t[leave][j];
                    }
                }
            }
            basis[leave] = enter;
        }
        if (-obj[width - 1] > tol * static_cast<Real>(m_ + 1)) {
            return std::nullopt;
        }
        std::vector<Real> x(n_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis[i] < n_) {
                x[basis[i]] = std::max<Real>(t[i][width - 1], 0);
            }
        }
        return x;
    }

   private:
    static constexpr std::size_t kMaxIterations = 100000;
    std::size_t m_;
    std::size_t n_;
    std::vector<std::vector<Real>> a_;
    std::vector<Real> b_;
};

}  // namespace gqec
