/*!
  \file search.hpp
  \brief Exhaustive enumeration of the functions a model computes within an
         integer parameter range

  The parameter range for synapse budget `k` is:

  - LTU: weights `w_i` in `0..k`, threshold in `1..sum(w)+1`;
  - nLTU: `d` subunits (empty subunits allowed), each input spreading at
    most `k` synapses over them, saturation `s_j` in `1..max(1, rowsum_j)`,
    threshold in `1..sum(s)+1`.

  nLTU weight matrices whose subunit rows are not in canonical order are
  skipped (and counted as pruned), since permuting subunits never changes
  the computed function. Inputs are never permuted: functions, not
  equivalence classes, are counted.
*/

#pragma once

#include "models.hpp"
#include "truth_table.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nltu
{

enum class model_kind
{
  ltu,
  nltu
};

std::string_view to_string( model_kind kind );

/*! \brief Parses "ltu" or "nltu"; throws `std::invalid_argument` otherwise. */
model_kind parse_model_kind( std::string_view text );

inline constexpr unsigned max_subunit_cap = 12u;
inline constexpr std::uint64_t default_state_cap = 10'000'000'000ull;

struct search_spec
{
  unsigned arity = 1u;
  model_kind model = model_kind::ltu;
  unsigned synapse_budget = 1u;
  /* 0 selects the default, one subunit per input; ignored for the LTU */
  unsigned max_subunits = 0u;

  unsigned subunits() const noexcept
  {
    if ( model == model_kind::ltu )
      return 1u;
    return max_subunits == 0u ? arity : max_subunits;
  }

  void validate() const;

  /*! Stable one-line description, also used for report provenance. */
  std::string describe() const;
};

struct search_options
{
  unsigned workers = 1u;
  std::uint64_t state_cap = default_state_cap;
  bool keep_witnesses = false;
  /* periodic progress lines; nullptr disables them */
  std::ostream* progress = nullptr;
};

using parameter_set = std::variant<ltu_params, nltu_params>;

truth_table truth_table_of( parameter_set const& params );

struct search_result
{
  search_spec spec;
  function_set functions;
  /* parameter sets evaluated, one per (weights, saturations, threshold) */
  std::uint64_t states_visited = 0u;
  /* parameter sets skipped because their subunit order was not canonical */
  std::uint64_t states_pruned = 0u;
  /* first parameter set found for each mask, in enumeration order;
     filled only with `search_options::keep_witnesses` */
  std::map<std::uint64_t, parameter_set> witnesses;
};

/*! \brief Raised when a search exceeds its state cap. Carries what was found. */
class search_limit_exceeded : public std::runtime_error
{
public:
  search_limit_exceeded( std::string const& what, search_result partial )
      : std::runtime_error( what ), partial_( std::move( partial ) )
  {
  }

  search_result const& partial() const noexcept { return partial_; }

private:
  search_result partial_;
};

/*! \brief All distinct truth tables computable within the spec's range.

  The result is identical for every worker count: workers enumerate
  disjoint chunks of the weight space into private sets that are merged by
  set union, and witnesses keep the earliest parameter set in enumeration
  order.
*/
search_result enumerate_functions( search_spec const& spec, search_options const& options = {} );

/*! \brief Sorts subunits by (weight row, saturation), ascending. */
nltu_params canonicalize_nltu( nltu_params params );

bool is_canonical( nltu_params const& params );

/*! \brief When a budget counts as reaching full LTU capacity. */
enum class capacity_criterion
{
  /* at least as many distinct functions as the target holds */
  function_count,
  /* every target function is computable */
  contains_target
};

std::string_view to_string( capacity_criterion criterion );

struct budget_search_options
{
  capacity_criterion criterion = capacity_criterion::function_count;
  unsigned max_subunits = 0u;
  unsigned budget_cap = 12u;
  search_options search;
};

struct budget_result
{
  unsigned budget;
  search_result result;
};

/*! \brief Raised when no budget up to the cap covers the target. */
class budget_not_reached : public std::runtime_error
{
public:
  budget_not_reached( std::string const& what, unsigned best_budget, std::size_t covered, search_result best )
      : std::runtime_error( what ), best_budget_( best_budget ), covered_( covered ), best_( std::move( best ) )
  {
  }

  unsigned best_budget() const noexcept { return best_budget_; }
  /* target functions computable at the best budget */
  std::size_t covered() const noexcept { return covered_; }
  search_result const& best() const noexcept { return best_; }

private:
  unsigned best_budget_;
  std::size_t covered_;
  search_result best_;
};

/*! \brief Smallest synapse budget reaching the capacity of `target`.

  Tries k = 1, 2, ... and stops at the first budget meeting the criterion.
  An LTU only computes threshold functions, so for a threshold-function
  target both criteria mean set equality and the LTU result is checked to
  be equal. An nLTU also computes functions outside such a target, so set
  equality is never required of it.
*/
budget_result minimal_budget_for_capacity( model_kind model, unsigned arity, function_set const& target,
                                           budget_search_options const& options = {} );

/*! \brief One JSON object per line: {"mask": "0x..", "n": .., "params": {..}}. */
void write_witnesses( std::ostream& os, search_result const& result );

} // namespace nltu
