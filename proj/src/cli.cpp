#include "nltu/cli.hpp"

#include "nltu/experiments.hpp"
#include "nltu/oracle.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

namespace nltu
{

namespace
{

constexpr unsigned arity_cap = 6u;

unsigned parse_unsigned( std::string_view text, std::string const& what )
{
  unsigned value = 0u;
  auto const [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), value );
  if ( ec != std::errc{} || ptr != text.data() + text.size() || text.empty() )
    throw usage_error( fmt::format( "invalid {} '{}'", what, text ) );
  return value;
}

} // namespace

std::vector<unsigned> parse_arity_range( std::string const& text )
{
  unsigned lo = 0u, hi = 0u;
  if ( auto const dots = text.find( ".." ); dots != std::string::npos )
  {
    lo = parse_unsigned( std::string_view( text ).substr( 0, dots ), "arity range" );
    hi = parse_unsigned( std::string_view( text ).substr( dots + 2 ), "arity range" );
  }
  else
  {
    lo = hi = parse_unsigned( text, "arity" );
  }
  if ( lo == 0u || lo > hi )
    throw usage_error( fmt::format( "invalid arity range '{}'", text ) );
  if ( hi > arity_cap )
    throw usage_error( fmt::format( "arity {} exceeds the supported maximum of {}", hi, arity_cap ) );
  std::vector<unsigned> arities;
  for ( auto n = lo; n <= hi; ++n )
    arities.push_back( n );
  return arities;
}

std::filesystem::path default_cache_dir()
{
  if ( auto const* env = std::getenv( "NLTU_CACHE_DIR" ); env != nullptr && *env != '\0' )
    return env;
  return ".nltu-cache";
}

run_config parse_args( int argc, char const* const* argv )
{
  CLI::App app{ "Function-counting experiments for threshold units with saturating dendritic subunits" };
  app.set_version_flag( "--version", std::string( NLTU_VERSION ) );
  app.require_subcommand( 1 );

  run_config config;
  config.workers = std::max( 1u, std::thread::hardware_concurrency() );
  std::string arity_text;
  std::string model_text;
  std::string kind_text;
  std::string cache_text;

  auto add_common = [&]( CLI::App* sub ) {
    sub->add_option( "--workers", config.workers, "Worker threads" )->check( CLI::Range( 1u, 1024u ) );
    sub->add_option( "--out", config.out_dir, "Output directory" );
    sub->add_option( "--cache", cache_text, "Oracle cache directory (default: $NLTU_CACHE_DIR or .nltu-cache)" );
    sub->add_flag( "--quiet", config.quiet, "Suppress progress lines" );
  };
  auto add_search = [&]( CLI::App* sub ) {
    sub->add_option( "--n,--n-range", arity_text, "Arity, or an inclusive range such as 1..5" );
    sub->add_option( "--d-max", config.max_subunits, "Maximum number of nLTU subunits (default: n)" )
        ->check( CLI::Range( 1u, max_subunit_cap ) );
    sub->add_option( "--state-cap", config.state_cap, "Abort a search after this many parameter sets" );
  };

  auto* enumerate = app.add_subcommand( "enumerate", "Count the functions one model computes within a budget" );
  add_common( enumerate );
  add_search( enumerate );
  enumerate->add_option( "--model", model_text, "ltu or nltu" )->required();
  enumerate->add_option( "--budget", config.budget, "Synapses per input line" )->check( CLI::Range( 1u, 64u ) );
  enumerate->add_flag( "--witnesses", config.witnesses, "Write one parameter set per function as JSON lines" );

  auto* oracle = app.add_subcommand( "oracle", "Build or load the positive threshold function tables" );
  add_common( oracle );
  oracle->add_option( "--n,--n-range", arity_text, "Arity, or an inclusive range such as 1..5" );

  auto* figure1 = app.add_subcommand( "figure1", "Check the two-device worked example" );
  figure1->add_option( "--out", config.out_dir, "Output directory" );

  auto* figure2 = app.add_subcommand( "figure2", "Minimal synapse budget reaching full LTU capacity" );
  add_common( figure2 );
  add_search( figure2 );
  figure2->add_flag( "--allow-n6", config.allow_n6, "Permit n = 6, which takes hours" );

  auto* figure3 = app.add_subcommand( "figure3", "Function counts with one synapse per input line" );
  add_common( figure3 );
  add_search( figure3 );

  auto* plot = app.add_subcommand( "plot", "Render a report CSV as SVG" );
  plot->add_option( "--csv", config.csv, "Report CSV" )->required();
  plot->add_option( "--kind", kind_text, "figure2 or figure3 (default: from the file name)" );
  plot->add_option( "--svg", config.svg, "Output SVG (default: the CSV path with .svg)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::Success const& e )
  {
    /* --help and --version */
    std::string text;
    if ( e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" )
    {
      auto const* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
      text = target->help();
    }
    else
    {
      text = app.version();
      if ( text.empty() )
        text = NLTU_VERSION;
      text += '\n';
    }
    throw usage_error( text, 0 );
  }
  catch ( CLI::ParseError const& e )
  {
    throw usage_error( e.what(), 2 );
  }

  if ( *enumerate )
    config.cmd = command::enumerate;
  else if ( *oracle )
    config.cmd = command::oracle;
  else if ( *figure1 )
    config.cmd = command::figure1;
  else if ( *figure2 )
    config.cmd = command::figure2;
  else if ( *figure3 )
    config.cmd = command::figure3;
  else
    config.cmd = command::plot;

  switch ( config.cmd )
  {
  case command::enumerate:
    if ( arity_text.empty() )
      throw usage_error( "enumerate requires --n" );
    config.arities = parse_arity_range( arity_text );
    if ( config.arities.size() != 1u )
      throw usage_error( "enumerate takes a single arity" );
    try
    {
      config.model = parse_model_kind( model_text );
    }
    catch ( std::invalid_argument const& e )
    {
      throw usage_error( e.what() );
    }
    if ( config.model == model_kind::ltu && config.max_subunits != 0u )
      throw usage_error( "--d-max applies to the nltu model only" );
    break;
  case command::oracle:
    config.arities = parse_arity_range( arity_text.empty() ? "1..5" : arity_text );
    break;
  case command::figure2:
    config.arities = parse_arity_range( arity_text.empty() ? "3..5" : arity_text );
    if ( config.arities.back() == arity_cap && !config.allow_n6 )
      throw usage_error( "figure2 at n = 6 runs for hours; pass --allow-n6 to proceed" );
    break;
  case command::figure3:
    config.arities = parse_arity_range( arity_text.empty() ? "1..6" : arity_text );
    break;
  case command::plot:
    if ( kind_text.empty() )
    {
      auto const stem = config.csv.stem().string();
      if ( stem.find( "figure2" ) != std::string::npos )
        kind_text = "figure2";
      else if ( stem.find( "figure3" ) != std::string::npos )
        kind_text = "figure3";
      else
        throw usage_error( "cannot infer the chart kind from the file name; pass --kind" );
    }
    try
    {
      config.kind = parse_figure_kind( kind_text );
    }
    catch ( std::invalid_argument const& e )
    {
      throw usage_error( e.what() );
    }
    if ( config.svg.empty() )
      config.svg = std::filesystem::path( config.csv ).replace_extension( ".svg" );
    break;
  case command::figure1:
    break;
  }

  config.cache_dir = cache_text.empty() ? default_cache_dir() : std::filesystem::path( cache_text );
  return config;
}

namespace
{

std::ofstream open_output( std::filesystem::path const& file )
{
  if ( file.has_parent_path() )
    std::filesystem::create_directories( file.parent_path() );
  std::ofstream os( file, std::ios::binary | std::ios::trunc );
  if ( !os )
    throw std::runtime_error( fmt::format( "cannot write {}", file.string() ) );
  return os;
}

void close_output( std::ofstream& os, std::filesystem::path const& file )
{
  os.close();
  if ( !os )
    throw std::runtime_error( fmt::format( "failed writing {}", file.string() ) );
}

experiment_options experiment_options_for( run_config const& config, std::ostream& err )
{
  experiment_options options;
  options.workers = config.workers;
  options.state_cap = config.state_cap;
  options.max_subunits = config.max_subunits;
  options.cache_dir = config.cache_dir;
  options.progress = config.quiet ? nullptr : &err;
  return options;
}

int run_enumerate( run_config const& config, std::ostream& out, std::ostream& err )
{
  search_spec spec{ config.arities.front(), config.model, config.budget, config.max_subunits };
  search_options options;
  options.workers = config.workers;
  options.state_cap = config.state_cap;
  options.keep_witnesses = config.witnesses;
  options.progress = config.quiet ? nullptr : &err;

  auto const result = enumerate_functions( spec, options );
  fmt::print( out, "{}: {} functions ({} parameter sets visited, {} pruned)\n", spec.describe(),
              result.functions.size(), result.states_visited, result.states_pruned );

  if ( config.witnesses )
  {
    auto const file = config.out_dir / fmt::format( "witnesses_{}_n{}_k{}.jsonl", to_string( spec.model ), spec.arity,
                                                    spec.synapse_budget );
    auto os = open_output( file );
    write_witnesses( os, result );
    close_output( os, file );
    fmt::print( out, "wrote {}\n", file.string() );
  }
  return 0;
}

int run_oracle( run_config const& config, std::ostream& out )
{
  for ( auto n : config.arities )
  {
    auto const table = load_or_build_oracle( n, config.cache_dir, config.workers );
    fmt::print( out, "n={}: {} monotone functions, {} positive threshold functions other than TRUE, "
                     "LTU budget {}\n",
                n, table.monotone_count, table.entries.size(), table.required_ltu_budget() );
  }
  return 0;
}

int run_figure1( run_config const& config, std::ostream& out )
{
  auto const report = verify_figure1();
  for ( auto const& c : report.checks )
    fmt::print( out, "{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail );

  auto const file = config.out_dir / "figure1_verify.json";
  auto os = open_output( file );
  os << to_json( report ).dump( 2 ) << '\n';
  close_output( os, file );
  fmt::print( out, "wrote {}\n", file.string() );
  return report.passed() ? 0 : 1;
}

int write_report( run_config const& config, capacity_report const& report, std::ostream& out )
{
  for ( auto const& row : report.rows )
  {
    fmt::print( out, "n={} {:<4} k={}{} functions={} threshold_functions={} bits={:.2f}\n", row.arity,
                to_string( row.model ), row.budget, row.reached ? "" : " (not reached)", row.function_count,
                row.oracle_count, row.capacity_bits );
  }

  auto const csv = config.out_dir / fmt::format( "{}.csv", report.figure );
  auto const json = config.out_dir / fmt::format( "{}.json", report.figure );
  {
    auto os = open_output( csv );
    write_csv( os, report );
    close_output( os, csv );
  }
  {
    auto os = open_output( json );
    os << to_json( report ).dump( 2 ) << '\n';
    close_output( os, json );
  }
  fmt::print( out, "wrote {} and {}\n", csv.string(), json.string() );
  return 0;
}

int run_figure2_command( run_config const& config, std::ostream& out, std::ostream& err )
{
  if ( config.arities.back() == arity_cap )
  {
    auto const d = config.max_subunits == 0u ? arity_cap : config.max_subunits;
    fmt::print( err, "n=6: about {} nLTU weight matrices per threshold sweep at k=2, each tried with every "
                     "saturation and threshold\n",
                nltu_weight_matrices( arity_cap, 2u, d ) );
  }
  return write_report( config, run_figure2( config.arities, experiment_options_for( config, err ) ), out );
}

} // namespace

int run( run_config const& config, std::ostream& out, std::ostream& err )
{
  try
  {
    switch ( config.cmd )
    {
    case command::enumerate:
      return run_enumerate( config, out, err );
    case command::oracle:
      return run_oracle( config, out );
    case command::figure1:
      return run_figure1( config, out );
    case command::figure2:
      return run_figure2_command( config, out, err );
    case command::figure3:
      return write_report( config, run_figure3( config.arities, experiment_options_for( config, err ) ), out );
    case command::plot:
      emit_plot( config.csv, *config.kind, config.svg );
      fmt::print( out, "wrote {}\n", config.svg.string() );
      return 0;
    }
  }
  catch ( search_limit_exceeded const& e )
  {
    fmt::print( err, "error: {} ({} functions found before stopping)\n", e.what(), e.partial().functions.size() );
  }
  catch ( csv_error const& e )
  {
    fmt::print( err, "error: {}\n", e.what() );
  }
  catch ( std::exception const& e )
  {
    fmt::print( err, "error: {}\n", e.what() );
  }
  return 1;
}

} // namespace nltu
