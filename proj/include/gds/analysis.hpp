#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gds/dedekind.hpp"

namespace gds {

struct TableCell {
  std::string chi1, chi2;
  int k = 0;
  i64 j = 0;
  Rational r;
  std::string display;
  std::size_t count = 0;
  double seconds = 0;
};

// r with denominator q1 when that makes the numerator integral ("6/4")
std::string display_scale(const Rational& r, long q1);

TableCell image_scale(const SumContext& ctx, i64 j, unsigned threads = 0);

struct TableLayout {
  std::string title;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<int> ks;
};
const std::vector<TableLayout>& table_layouts();

using Progress = std::function<void(const std::string&)>;
// cells in layout order, table by table, column by column, k ascending
std::vector<std::vector<TableCell>> image_tables(i64 j, unsigned threads = 0, const Progress& progress = {});

bool poly_space_member(const RationalPoly& P, int k, const Rational& m, long q);

struct ContainmentReport {
  std::string chi1, chi2;
  int k = 0;
  std::size_t generator_count = 0;
  std::vector<Mat2> generators;
  std::vector<RationalPoly> polys;
  Rational m;
  Rational scale;  // m / q1
  bool all_members = false;
};

// the largest m with q1^{n+1} a_n in mZ for every coefficient of every h_gamma, gamma in G
ContainmentReport containment_m(const SumContext& ctx, const std::vector<Mat2>& generators, unsigned threads = 0);
ContainmentReport containment_m(const SumContext& ctx, unsigned threads = 0);

struct ConjectureCheck {
  Rational value;
  bool integral_form = false;  // value = d
  bool q1_form = false;        // value = d / q1
  Integer d;
  bool divides = false;        // d | 2k - 2
};
ConjectureCheck conjecture_shape(const Rational& value, int k, long q1);

double trivial_bound(const SumContext& ctx, i64 c);
// true when |S| is provably at most the bound, using rational brackets of pi
bool within_trivial_bound(const SumContext& ctx, i64 c, const Rational& abs_S);

struct BoundReport {
  std::string chi1, chi2;
  int k = 0;
  i64 C = 0;
  std::size_t count = 0;
  std::size_t bound_violations = 0;
  std::size_t delta_violations = 0;
  double max_ratio = 0;
  i64 max_ratio_a = 0, max_ratio_c = 0;
  double mean_ratio = 0;
  std::vector<std::size_t> histogram;  // ratio buckets of width max_ratio / 10
  double max_abs = 0;
};
BoundReport bound_statistics(const SumContext& ctx, i64 C, unsigned threads = 0);
std::size_t exceptional_count(const SumContext& ctx, double alpha, i64 C, unsigned threads = 0);

void to_json(nlohmann::json& j, const TableCell& c);
void to_json(nlohmann::json& j, const ContainmentReport& r);
void to_json(nlohmann::json& j, const BoundReport& r);

}  // namespace gds
