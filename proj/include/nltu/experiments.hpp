/*!
  \file experiments.hpp
  \brief Capacity experiments: the two-device worked example, the minimal
         synapse budget reaching full LTU capacity, and single-synapse
         function counts
*/

#pragma once

#include "models.hpp"
#include "search.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nltu
{

struct report_row
{
  unsigned arity = 1u;
  model_kind model = model_kind::ltu;
  unsigned budget = 1u;
  std::uint64_t function_count = 0u;
  std::uint64_t oracle_count = 0u;
  double capacity_bits = 0.0;
  std::optional<std::uint64_t> paper_value;
  bool match = false;
  /* false when a budget search hit its cap; `budget` is then the best tried */
  bool reached = true;

  /* JSON-only details */
  std::optional<unsigned> oracle_budget;
  /* budget at which every target function is computable (figure 2);
     `containment_reached` is false when the containment cap was hit */
  std::optional<unsigned> containment_budget;
  bool containment_reached = false;
  std::uint64_t containment_covered = 0u;
  std::optional<std::uint64_t> closed_form_count;
  std::uint64_t states_visited = 0u;
  std::uint64_t states_pruned = 0u;
};

struct provenance
{
  std::string code_version;
  std::string timestamp;
  unsigned workers = 1u;
  std::vector<std::string> specs;
  std::string spec_hash;
};

struct capacity_report
{
  std::string figure;
  std::vector<report_row> rows;
  provenance origin;
};

struct experiment_options
{
  unsigned workers = 1u;
  std::uint64_t state_cap = default_state_cap;
  unsigned max_subunits = 0u;
  unsigned ltu_budget_cap = 12u;
  unsigned nltu_budget_cap = 4u;
  /* cap for the nLTU set-containment budget in figure 2; 0 skips it */
  unsigned containment_budget_cap = 3u;
  /* empty: oracles are rebuilt in memory on every run */
  std::filesystem::path cache_dir;
  std::ostream* progress = nullptr;
};

/*! \brief log2 of a function count rounded to two decimals. */
double capacity_bits( std::uint64_t function_count );

/*! \brief Functions computable by a single-synapse LTU: one threshold
           1..|S| per nonempty input subset S, plus constant FALSE. */
std::uint64_t single_synapse_ltu_count( unsigned arity );

/* values read off the published figures and text */
std::optional<std::uint64_t> published_minimal_budget( model_kind model, unsigned arity );
std::optional<std::uint64_t> published_single_synapse_count( model_kind model, unsigned arity );

/*! \brief Per arity and model, the smallest synapse budget at which the
           model computes as many distinct functions as there are positive
           threshold functions. The budget at which it computes every one
           of them is reported alongside. */
capacity_report run_figure2( std::span<const unsigned> arities, experiment_options const& options = {} );

/*! \brief Per arity and model, the number of functions computable with one
           synapse per input line. */
capacity_report run_figure3( std::span<const unsigned> arities, experiment_options const& options = {} );

/* A at x0, B at x1, C at x2; C carries two synapses */
ltu_params figure1_ltu();
/* A and B share a saturating subunit, C has its own */
nltu_params figure1_nltu();

inline constexpr std::uint64_t figure1_mask = 0xe0u;

struct named_check
{
  std::string name;
  bool passed = false;
  std::string detail;
};

struct figure1_report
{
  std::vector<named_check> checks;

  bool passed() const;
};

figure1_report verify_figure1();

/*! \brief Rough count of nLTU weight matrices, printed before opt-in runs. */
std::uint64_t nltu_weight_matrices( unsigned arity, unsigned budget, unsigned subunits );

/* CSV: n,model,budget,function_count,oracle_count,capacity_bits,paper_value,match */
inline constexpr std::string_view csv_header = "n,model,budget,function_count,oracle_count,capacity_bits,paper_value,match";

void write_csv( std::ostream& os, capacity_report const& report );
nlohmann::json to_json( capacity_report const& report );
nlohmann::json to_json( figure1_report const& report );

/*! \brief Malformed report CSV; names the offending row and column. */
class csv_error : public std::runtime_error
{
public:
  csv_error( std::size_t row, std::string column, std::string const& what );

  std::size_t row() const noexcept { return row_; }
  std::string const& column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::string column_;
};

/*! \brief Parses a report CSV. Rows are numbered from 1 after the header.
           Throws `csv_error` on malformed content or an empty body. */
std::vector<report_row> read_csv( std::istream& is );

} // namespace nltu
