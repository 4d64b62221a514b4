/*!
  \file cli.hpp
  \brief Command-line front end: argument parsing and pipeline dispatch
*/

#pragma once

#include "plot.hpp"
#include "search.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nltu
{

enum class command
{
  enumerate,
  oracle,
  figure1,
  figure2,
  figure3,
  plot
};

struct run_config
{
  command cmd = command::figure1;
  std::vector<unsigned> arities;
  model_kind model = model_kind::ltu;
  unsigned budget = 1u;
  unsigned max_subunits = 0u;
  unsigned workers = 1u;
  std::uint64_t state_cap = default_state_cap;
  std::filesystem::path out_dir = ".";
  bool witnesses = false;
  std::filesystem::path cache_dir;
  bool allow_n6 = false;
  bool quiet = false;

  /* plot */
  std::filesystem::path csv;
  std::optional<figure_kind> kind;
  std::filesystem::path svg;
};

/*! \brief Bad command line. `exit_code()` is 0 for --help and --version,
           whose text is carried as the message. */
class usage_error : public std::runtime_error
{
public:
  usage_error( std::string const& what, int exit_code = 2 ) : std::runtime_error( what ), exit_code_( exit_code ) {}

  int exit_code() const noexcept { return exit_code_; }

private:
  int exit_code_;
};

/*! \brief Parses "5" or "1..5" into the listed arities. */
std::vector<unsigned> parse_arity_range( std::string const& text );

/*! \brief The cache directory: NLTU_CACHE_DIR when set, else ".nltu-cache". */
std::filesystem::path default_cache_dir();

run_config parse_args( int argc, char const* const* argv );

/*! \brief Runs the configured pipeline. Returns 0 iff it completed and
           wrote every declared output file. */
int run( run_config const& config, std::ostream& out, std::ostream& err );

} // namespace nltu
