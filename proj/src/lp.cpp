#include "pmetric/lp.hpp"

#include <sstream>
#include <stdexcept>

#include "pmetric/errors.hpp"

namespace pmetric::lp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

LinearProgram::LinearProgram(std::size_t variables, Sense sense)
    : sense_(sense), objective_(variables), bounds_(variables), names_(variables) {
  if (variables == 0) throw std::invalid_argument("linear program needs at least one variable");
  for (std::size_t j = 0; j < variables; ++j) names_[j] = "x" + std::to_string(j);
}

void LinearProgram::set_objective(std::size_t j, Rational coefficient) {
  objective_.at(j) = std::move(coefficient);
}

void LinearProgram::set_bounds(std::size_t j, Bounds bounds) { bounds_.at(j) = std::move(bounds); }

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   Rational rhs) {
  if (coefficients.size() != objective_.size()) {
    throw std::invalid_argument("constraint has " + std::to_string(coefficients.size()) +
                                " coefficients, expected " + std::to_string(objective_.size()));
  }
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_name(std::size_t j, std::string name) { names_.at(j) = std::move(name); }

namespace {

void write_linear(std::ostream& os, const std::vector<Rational>& coeffs,
                  const std::vector<std::string>& names) {
  bool any = false;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    if (coeffs[j].sign() < 0) {
      os << (any ? " - " : "-");
    } else if (any) {
      os << " + ";
    }
    const Rational mag = coeffs[j].abs();
    if (mag != Rational(1)) os << mag << " ";
    os << names[j];
    any = true;
  }
  if (!any) os << "0";
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

}  // namespace

std::string LinearProgram::dump() const {
  std::ostringstream os;
  os << (sense_ == Sense::Maximize ? "maximize" : "minimize") << "\n  ";
  write_linear(os, objective_, names_);
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    os << "  c" << i << ": ";
    write_linear(os, constraints_[i].coefficients, names_);
    os << " " << relation_symbol(constraints_[i].relation) << " " << constraints_[i].rhs << "\n";
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    const auto& b = bounds_[j];
    os << "  " << (b.lower ? b.lower->str() : "-inf") << " <= " << names_[j]
       << " <= " << (b.upper ? b.upper->str() : "+inf") << "\n";
  }
  return os.str();
}

namespace {

constexpr std::size_t kDegenerateRunBeforeBland = 32;

// Compact simplex tableau. Row i stores
//   basic_i = rhs_i - sum_k T[i][k] * nonbasic_k
// and the objective rows use the same convention, so a column with a negative
// objective entry is improving.
class Tableau {
  PivotRule rule_;

public:
  Tableau(std::size_t rows, std::size_t cols, PivotRule rule)
      : rule_(rule), rows_(rows), cols_(cols), width_(cols + 1), data_((rows + 2) * (cols + 1)),
        basic_(rows), nonbasic_(cols), row_live_(rows, true), col_live_(cols, true) {}

  mpq_class& at(std::size_t i, std::size_t k) { return data_[i * width_ + k + 1]; }
  mpq_class& rhs(std::size_t i) { return data_[i * width_]; }
  std::size_t objective_row() const { return rows_; }
  std::size_t phase_one_row() const { return rows_ + 1; }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<mpq_class> data_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::vector<bool> row_live_;
  std::vector<bool> col_live_;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t k, bool with_phase_one) {
    ++pivots;
    mpq_class inv = 1 / at(r, k);
    mpq_class* prow = &data_[r * width_];
    // Scale the pivot row; remember which of its columns are nonzero.
    nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (j == k + 1 || sgn(prow[j]) == 0) continue;
      if (j > 0 && !col_live_[j - 1]) continue;
      prow[j] *= inv;
      nz_.push_back(j);
    }
    prow[k + 1] = inv;
    const std::size_t last = with_phase_one ? rows_ + 2 : rows_ + 1;
    for (std::size_t i = 0; i < last; ++i) {
      if (i == r || (i < rows_ && !row_live_[i])) continue;
      mpq_class* row = &data_[i * width_];
      if (sgn(row[k + 1]) == 0) continue;
      const mpq_class factor = row[k + 1];
      for (std::size_t j : nz_) {
        mpq_mul(tmp_.get_mpq_t(), factor.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp_.get_mpq_t());
      }
      mpq_mul(row[k + 1].get_mpq_t(), factor.get_mpq_t(), inv.get_mpq_t());
      mpq_neg(row[k + 1].get_mpq_t(), row[k + 1].get_mpq_t());
    }
    std::swap(basic_[r], nonbasic_[k]);
  }

  // Entering column: Bland takes the least-index improving column; Dantzig
  // the most negative objective entry, reverting to Bland while a run of
  // degenerate pivots is long. Leaving row: minimum ratio, ties to the
  // least-index basic variable. Returns false at optimality; sets unbounded
  // when the chosen column has no positive entry.
  bool step(std::size_t objective, bool with_phase_one, bool& unbounded) {
    const bool bland =
        rule_ == PivotRule::Bland || degenerate_run_ >= kDegenerateRunBeforeBland;
    std::size_t enter = cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!col_live_[k] || sgn(at(objective, k)) >= 0) continue;
      if (enter == cols_) {
        enter = k;
      } else if (bland ? nonbasic_[k] < nonbasic_[enter]
                       : cmp(at(objective, k), at(objective, enter)) < 0) {
        enter = k;
      }
    }
    if (enter == cols_) return false;
    std::size_t leave = rows_;
    mpq_class best, ratio;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!row_live_[i] || sgn(at(i, enter)) <= 0) continue;
      ratio = rhs(i) / at(i, enter);
      if (leave == rows_) {
        leave = i;
        best = ratio;
        continue;
      }
      const int c = cmp(ratio, best);
      if (c < 0 || (c == 0 && basic_[i] < basic_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows_) {
      unbounded = true;
      return false;
    }
    degenerate_run_ = sgn(best) == 0 ? degenerate_run_ + 1 : 0;
    pivot(leave, enter, with_phase_one);
    return true;
  }

private:
  std::vector<std::size_t> nz_;
  mpq_class tmp_;
  std::size_t degenerate_run_ = 0;
};

// How an original variable maps to nonnegative internal columns:
//   x = offset + sum (sign * column).
struct VariableMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> columns;
};

struct Row {
  std::vector<Rational> coeffs;  // over internal structural columns
  Relation relation;
  Rational rhs;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, PivotRule rule) {
  const std::size_t n = lp.variable_count();
  LpSolution solution;

  // Reduce every variable to nonnegative internal columns.
  std::vector<VariableMap> maps(n);
  std::size_t internal = 0;
  std::vector<std::pair<std::size_t, Rational>> upper_rows;  // column <= value
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds(j);
    if (b.lower && b.upper) {
      if (*b.lower > *b.upper) return solution;  // Infeasible
      maps[j].offset = *b.lower;
      if (*b.lower == *b.upper) continue;
      maps[j].columns.push_back({internal, 1});
      upper_rows.push_back({internal, *b.upper - *b.lower});
      ++internal;
    } else if (b.lower) {
      maps[j].offset = *b.lower;
      maps[j].columns.push_back({internal++, 1});
    } else if (b.upper) {
      maps[j].offset = *b.upper;
      maps[j].columns.push_back({internal++, -1});
    } else {
      maps[j].columns.push_back({internal++, 1});
      maps[j].columns.push_back({internal++, -1});
    }
  }

  std::vector<Row> rows;
  rows.reserve(lp.constraints().size() + upper_rows.size());
  for (const auto& con : lp.constraints()) {
    Row row{std::vector<Rational>(internal), con.relation, con.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = con.coefficients[j];
      if (a.is_zero()) continue;
      row.rhs -= a * maps[j].offset;
      for (const auto& [col, sign] : maps[j].columns) {
        row.coeffs[col] += sign > 0 ? a : -a;
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& [col, cap] : upper_rows) {
    Row row{std::vector<Rational>(internal), Relation::LessEqual, cap};
    row.coeffs[col] = 1;
    rows.push_back(std::move(row));
  }
  // Nonnegative right-hand sides.
  std::size_t surplus = 0;
  for (auto& row : rows) {
    if (row.rhs.sign() < 0) {
      row.rhs = -row.rhs;
      for (auto& a : row.coeffs) a = -a;
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
    if (row.relation == Relation::GreaterEqual) ++surplus;
  }

  // Variable ids (also the Bland order): structural columns, then surplus
  // columns, then one row variable per row (slack or artificial).
  const std::size_t m = rows.size();
  const std::size_t cols = internal + surplus;
  Tableau t(m, cols, rule);
  std::vector<bool> artificial(cols + m, false);
  for (std::size_t k = 0; k < cols; ++k) t.nonbasic_[k] = k;
  std::size_t next_surplus = internal;
  bool need_phase_one = false;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows[i];
    t.basic_[i] = cols + i;
    t.rhs(i) = row.rhs.raw();
    for (std::size_t k = 0; k < internal; ++k) {
      if (!row.coeffs[k].is_zero()) t.at(i, k) = row.coeffs[k].raw();
    }
    if (row.relation == Relation::GreaterEqual) t.at(i, next_surplus++) = -1;
    if (row.relation != Relation::LessEqual) {
      artificial[cols + i] = true;
      need_phase_one = true;
    }
  }

  // Objective row, always as maximisation.
  const bool minimize = lp.sense() == Sense::Minimize;
  Rational constant;
  {
    std::vector<Rational> c(internal);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& cj = lp.objective()[j];
      if (cj.is_zero()) continue;
      constant += cj * maps[j].offset;
      for (const auto& [col, sign] : maps[j].columns) c[col] += sign > 0 ? cj : -cj;
    }
    const std::size_t z = t.objective_row();
    t.rhs(z) = minimize ? mpq_class(-constant.raw()) : constant.raw();
    for (std::size_t k = 0; k < internal; ++k) {
      if (!c[k].is_zero()) t.at(z, k) = minimize ? c[k].raw() : mpq_class(-c[k].raw());
    }
  }

  bool unbounded = false;
  if (need_phase_one) {
    const std::size_t w = t.phase_one_row();
    for (std::size_t i = 0; i < m; ++i) {
      if (!artificial[t.basic_[i]]) continue;
      t.rhs(w) -= t.rhs(i);
      for (std::size_t k = 0; k < cols; ++k) t.at(w, k) -= t.at(i, k);
    }
    for (;;) {
      if (!t.step(w, true, unbounded)) break;
      // An artificial that left the basis never re-enters.
      for (std::size_t k = 0; k < cols; ++k) {
        if (t.col_live_[k] && artificial[t.nonbasic_[k]]) t.col_live_[k] = false;
      }
    }
    if (unbounded) throw CertificationError("phase one reported unbounded");
    if (sgn(t.rhs(w)) < 0) {
      solution.pivots = t.pivots;
      return solution;  // Infeasible
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < m; ++i) {
      if (!t.row_live_[i] || !artificial[t.basic_[i]]) continue;
      std::size_t enter = cols;
      for (std::size_t k = 0; k < cols; ++k) {
        if (!t.col_live_[k] || sgn(t.at(i, k)) == 0) continue;
        if (enter == cols || t.nonbasic_[k] < t.nonbasic_[enter]) enter = k;
      }
      if (enter == cols) {
        t.row_live_[i] = false;
      } else {
        t.pivot(i, enter, false);
        t.col_live_[enter] = false;
      }
    }
  }

  const std::size_t z = t.objective_row();
  while (t.step(z, false, unbounded)) {
  }
  solution.pivots = t.pivots;
  if (unbounded) {
    solution.status = Status::Unbounded;
    return solution;
  }

  std::vector<Rational> values(cols + m);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.row_live_[i]) values[t.basic_[i]] = Rational(t.rhs(i));
  }
  solution.status = Status::Optimal;
  solution.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = maps[j].offset;
    for (const auto& [col, sign] : maps[j].columns) {
      if (sign > 0) {
        x += values[col];
      } else {
        x -= values[col];
      }
    }
    solution.primal[j] = std::move(x);
  }
  for (std::size_t j = 0; j < n; ++j) solution.value += lp.objective()[j] * solution.primal[j];

  const Rational tableau_value = minimize ? -Rational(t.rhs(z)) : Rational(t.rhs(z));
  auto problems = certificate_violations(lp, solution);
  if (tableau_value != solution.value) {
    problems.push_back("tableau objective " + tableau_value.str() + " != recomputed " +
                       solution.value.str());
  }
  if (!problems.empty()) {
    std::string msg = "LP certification failed:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw CertificationError(msg + "\n" + lp.dump());
  }
  return solution;
}

std::vector<std::string> certificate_violations(const LinearProgram& lp,
                                                const LpSolution& solution) {
  std::vector<std::string> out;
  if (solution.status != Status::Optimal) return out;
  const std::size_t n = lp.variable_count();
  if (solution.primal.size() != n) {
    out.push_back("primal has wrong length");
    return out;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds(j);
    if (b.lower && solution.primal[j] < *b.lower) out.push_back(lp.name(j) + " below lower bound");
    if (b.upper && solution.primal[j] > *b.upper) out.push_back(lp.name(j) + " above upper bound");
  }
  for (std::size_t i = 0; i < lp.constraints().size(); ++i) {
    const auto& con = lp.constraints()[i];
    Rational lhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (!con.coefficients[j].is_zero()) lhs += con.coefficients[j] * solution.primal[j];
    }
    const bool ok = con.relation == Relation::LessEqual  ? lhs <= con.rhs
                    : con.relation == Relation::Equal    ? lhs == con.rhs
                                                         : lhs >= con.rhs;
    if (!ok) {
      out.push_back("constraint c" + std::to_string(i) + " violated: lhs " + lhs.str() +
                    ", rhs " + con.rhs.str());
    }
  }
  Rational value;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective()[j] * solution.primal[j];
  if (value != solution.value) {
    out.push_back("objective " + value.str() + " != reported " + solution.value.str());
  }
  return out;
}

}  // namespace pmetric::lp
