#include "nltu/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

namespace nltu
{

std::string_view to_string( model_kind kind )
{
  return kind == model_kind::ltu ? "ltu" : "nltu";
}

model_kind parse_model_kind( std::string_view text )
{
  if ( text == "ltu" )
    return model_kind::ltu;
  if ( text == "nltu" )
    return model_kind::nltu;
  throw std::invalid_argument( fmt::format( "unknown model '{}', expected ltu or nltu", text ) );
}

void search_spec::validate() const
{
  if ( arity < 1u || arity > max_arity )
  {
    throw contract_error( fmt::format( "arity {} outside 1..{}", arity, max_arity ) );
  }
  if ( synapse_budget < 1u )
  {
    throw contract_error( "synapse budget must be at least 1" );
  }
  if ( model == model_kind::nltu && subunits() > max_subunit_cap )
  {
    throw contract_error( fmt::format( "at most {} subunits are supported", max_subunit_cap ) );
  }
}

std::string search_spec::describe() const
{
  if ( model == model_kind::ltu )
    return fmt::format( "model=ltu n={} k={}", arity, synapse_budget );
  return fmt::format( "model=nltu n={} k={} d_max={}", arity, synapse_budget, subunits() );
}

truth_table truth_table_of( parameter_set const& params )
{
  return std::visit(
      []( auto const& p ) {
        if constexpr ( std::is_same_v<std::decay_t<decltype( p )>, ltu_params> )
          return ltu_truth_table( p );
        else
          return nltu_truth_table( p );
      },
      params );
}

nltu_params canonicalize_nltu( nltu_params params )
{
  params.validate();
  std::vector<std::pair<std::vector<int>, int>> subunits;
  subunits.reserve( params.num_subunits() );
  for ( auto j = 0u; j < params.num_subunits(); ++j )
  {
    subunits.emplace_back( std::move( params.subunit_weights[j] ), params.saturations[j] );
  }
  std::ranges::sort( subunits );
  for ( auto j = 0u; j < subunits.size(); ++j )
  {
    params.subunit_weights[j] = std::move( subunits[j].first );
    params.saturations[j] = subunits[j].second;
  }
  return params;
}

bool is_canonical( nltu_params const& params )
{
  for ( auto j = 1u; j < params.num_subunits(); ++j )
  {
    auto const prev = std::tie( params.subunit_weights[j - 1], params.saturations[j - 1] );
    auto const next = std::tie( params.subunit_weights[j], params.saturations[j] );
    if ( next < prev )
      return false;
  }
  return true;
}

namespace
{

using column = std::array<std::uint8_t, max_subunit_cap>;

/* all ways one input spreads at most `budget` synapses over `subunits` */
std::vector<column> subunit_columns( unsigned subunits, unsigned budget )
{
  std::vector<column> out;
  column current{};
  auto rec = [&]( auto&& self, unsigned j, unsigned left ) -> void {
    if ( j == subunits )
    {
      out.push_back( current );
      return;
    }
    for ( auto w = 0u; w <= left; ++w )
    {
      current[j] = static_cast<std::uint8_t>( w );
      self( self, j + 1u, left - w );
    }
    current[j] = 0u;
  };
  rec( rec, 0u, budget );
  return out;
}

std::uint64_t checked_power( std::uint64_t base, unsigned exponent )
{
  std::uint64_t out = 1u;
  for ( auto i = 0u; i < exponent; ++i )
  {
    if ( out > ~std::uint64_t{ 0 } / base )
      throw contract_error( "parameter space too large to index" );
    out *= base;
  }
  return out;
}

struct witness_entry
{
  std::uint64_t ordinal;
  parameter_set params;
};

/* private per-worker accumulator */
struct partial_result
{
  explicit partial_result( unsigned arity ) : functions( arity ) {}

  function_set functions;
  std::uint64_t visited = 0u;
  std::uint64_t pruned = 0u;
  std::unordered_map<std::uint64_t, witness_entry> witnesses;
};

class enumerator
{
public:
  enumerator( search_spec const& spec, search_options const& options )
      : spec_( spec ), options_( options ), assignments_( num_assignments( spec.arity ) )
  {
    if ( spec.model == model_kind::ltu )
    {
      radix_ = spec.synapse_budget + 1u;
    }
    else
    {
      columns_ = subunit_columns( spec.subunits(), spec.synapse_budget );
      radix_ = columns_.size();
    }
    space_ = checked_power( radix_, spec.arity );
  }

  search_result run()
  {
    auto const workers = std::max( 1u, options_.workers );
    auto const chunks = std::min<std::uint64_t>( space_, std::uint64_t{ workers } * 64u );
    chunk_size_ = ( space_ + chunks - 1u ) / chunks;
    num_chunks_ = ( space_ + chunk_size_ - 1u ) / chunk_size_;
    started_ = std::chrono::steady_clock::now();
    last_report_ = started_;

    std::vector<partial_result> partials( workers, partial_result( spec_.arity ) );
    std::vector<std::exception_ptr> errors( workers );
    {
      std::vector<std::jthread> pool;
      for ( auto w = 1u; w < workers; ++w )
      {
        pool.emplace_back( [&, w] { work( partials[w], errors[w] ); } );
      }
      work( partials[0], errors[0] );
    }
    for ( auto const& e : errors )
    {
      if ( e )
        std::rethrow_exception( e );
    }

    search_result result{ spec_, function_set( spec_.arity ), 0u, 0u, {} };
    std::unordered_map<std::uint64_t, witness_entry> witnesses;
    for ( auto& part : partials )
    {
      result.functions.merge( part.functions );
      result.states_visited += part.visited;
      result.states_pruned += part.pruned;
      for ( auto& [mask, entry] : part.witnesses )
      {
        auto [it, inserted] = witnesses.try_emplace( mask, entry );
        if ( !inserted && entry.ordinal < it->second.ordinal )
          it->second = std::move( entry );
      }
    }
    for ( auto& [mask, entry] : witnesses )
    {
      result.witnesses.emplace( mask, std::move( entry.params ) );
    }

    if ( options_.progress )
    {
      *options_.progress << fmt::format( "[search] {} done: {} functions, visited={} pruned={}\n", spec_.describe(),
                                         result.functions.size(), result.states_visited, result.states_pruned );
    }
    if ( aborted_.load() )
    {
      throw search_limit_exceeded(
          fmt::format( "search {} exceeded the state cap of {} (partial result: {} functions after {} states)",
                       spec_.describe(), options_.state_cap, result.functions.size(), result.states_visited ),
          std::move( result ) );
    }
    return result;
  }

private:
  void work( partial_result& out, std::exception_ptr& error )
  {
    try
    {
      scratch s( spec_ );
      while ( !aborted_.load( std::memory_order_relaxed ) )
      {
        auto const chunk = next_chunk_.fetch_add( 1u );
        if ( chunk >= num_chunks_ )
          break;
        auto const first = chunk * chunk_size_;
        auto const last = std::min( space_, first + chunk_size_ );
        for ( auto index = first; index < last; ++index )
        {
          auto const before = out.visited;
          if ( spec_.model == model_kind::ltu )
            visit_ltu( index, s, out );
          else
            visit_nltu( index, s, out );
          if ( visited_.fetch_add( out.visited - before, std::memory_order_relaxed ) + ( out.visited - before ) >
               options_.state_cap )
          {
            aborted_.store( true );
            break;
          }
        }
        report_progress( chunk );
      }
      if ( s.saw_false )
        out.functions.insert_mask( 0u );
    }
    catch ( ... )
    {
      error = std::current_exception();
      aborted_.store( true );
    }
  }

  struct scratch
  {
    explicit scratch( search_spec const& spec )
        : digits( spec.arity ), totals( num_assignments( spec.arity ) ),
          levels( spec.arity * spec.synapse_budget + spec.subunits() + 2u ),
          drives( spec.subunits(), std::vector<int>( num_assignments( spec.arity ) ) ),
          rows( spec.subunits(), std::vector<int>( spec.arity ) ), rowsums( spec.subunits() ),
          saturations( spec.subunits() ), equal_next( spec.subunits() )
    {
    }

    std::vector<unsigned> digits;
    std::vector<int> totals;
    std::vector<std::uint64_t> levels;
    std::vector<std::vector<int>> drives;
    std::vector<std::vector<int>> rows;
    std::vector<int> rowsums;
    std::vector<int> saturations;
    std::vector<std::uint8_t> equal_next;
    bool saw_false = false;
  };

  void decode( std::uint64_t index, scratch& s ) const
  {
    for ( auto i = 0u; i < spec_.arity; ++i )
    {
      s.digits[i] = static_cast<unsigned>( index % radix_ );
      index /= radix_;
    }
  }

  /* Inserts the function for every threshold 1..max_total+1 given the
     somatic sums in `s.totals`. Thresholds that add no new true point are
     skipped since they repeat the previous mask. */
  template<class MakeParams>
  void emit_thresholds( int max_total, std::uint64_t ordinal, scratch& s, partial_result& out, MakeParams&& make )
  {
    std::fill_n( s.levels.begin(), max_total + 1, std::uint64_t{ 0 } );
    for ( auto p = 0u; p < assignments_; ++p )
    {
      s.levels[s.totals[p]] |= std::uint64_t{ 1 } << p;
    }
    out.visited += static_cast<std::uint64_t>( max_total ) + 1u;

    if ( !s.saw_false || options_.keep_witnesses )
    {
      s.saw_false = true;
      record( 0u, ordinal, out, [&] { return make( max_total + 1 ); } );
    }
    std::uint64_t mask = 0u;
    for ( auto theta = max_total; theta >= 1; --theta )
    {
      if ( s.levels[theta] == 0u )
        continue;
      mask |= s.levels[theta];
      out.functions.insert_mask( mask );
      if ( options_.keep_witnesses )
        record( mask, ordinal, out, [&] { return make( theta ); } );
    }
  }

  template<class MakeParams>
  void record( std::uint64_t mask, std::uint64_t ordinal, partial_result& out, MakeParams&& make )
  {
    if ( !options_.keep_witnesses )
      return;
    if ( !out.witnesses.contains( mask ) )
      out.witnesses.emplace( mask, witness_entry{ ordinal, make() } );
  }

  void visit_ltu( std::uint64_t index, scratch& s, partial_result& out )
  {
    decode( index, s );
    auto max_total = 0;
    s.totals[0] = 0;
    for ( auto p = 1u; p < assignments_; ++p )
    {
      auto const low = static_cast<unsigned>( __builtin_ctz( p ) );
      s.totals[p] = s.totals[p & ( p - 1u )] + static_cast<int>( s.digits[low] );
    }
    for ( auto i = 0u; i < spec_.arity; ++i )
      max_total += static_cast<int>( s.digits[i] );

    emit_thresholds( max_total, index, s, out, [&]( int theta ) {
      ltu_params params{ std::vector<int>( s.digits.begin(), s.digits.end() ), theta };
      return parameter_set{ std::move( params ) };
    } );
  }

  /* parameter sets spanned by one weight matrix: sum over saturation
     vectors of (sum(s) + 1) thresholds */
  static std::uint64_t states_for_rowsums( std::span<const int> rowsums )
  {
    std::uint64_t product = 1u;
    for ( auto r : rowsums )
      product *= static_cast<std::uint64_t>( std::max( 1, r ) );
    std::uint64_t total = product;
    for ( auto r : rowsums )
    {
      auto const range = static_cast<std::uint64_t>( std::max( 1, r ) );
      total += ( product / range ) * ( range * ( range + 1u ) / 2u );
    }
    return total;
  }

  void visit_nltu( std::uint64_t index, scratch& s, partial_result& out )
  {
    decode( index, s );
    auto const d = spec_.subunits();
    auto const n = spec_.arity;
    for ( auto j = 0u; j < d; ++j )
    {
      auto sum = 0;
      for ( auto i = 0u; i < n; ++i )
      {
        s.rows[j][i] = columns_[s.digits[i]][j];
        sum += s.rows[j][i];
      }
      s.rowsums[j] = sum;
    }

    for ( auto j = 0u; j + 1u < d; ++j )
    {
      auto const cmp = std::lexicographical_compare_three_way( s.rows[j].begin(), s.rows[j].end(),
                                                               s.rows[j + 1u].begin(), s.rows[j + 1u].end() );
      if ( cmp > 0 )
      {
        out.pruned += states_for_rowsums( s.rowsums );
        return;
      }
      s.equal_next[j] = cmp == 0;
    }
    if ( d > 0u )
      s.equal_next[d - 1u] = 0u;

    /* empty rows sort first; only the rest contribute to the sums */
    auto first_active = 0u;
    while ( first_active < d && s.rowsums[first_active] == 0 )
      ++first_active;
    for ( auto j = first_active; j < d; ++j )
    {
      auto& drive = s.drives[j];
      drive[0] = 0;
      for ( auto p = 1u; p < assignments_; ++p )
      {
        auto const low = static_cast<unsigned>( __builtin_ctz( p ) );
        drive[p] = drive[p & ( p - 1u )] + s.rows[j][low];
      }
    }

    std::fill( s.saturations.begin(), s.saturations.end(), 1 );
    while ( true )
    {
      auto sum_saturation = 0;
      auto ordered = true;
      for ( auto j = 0u; j < d; ++j )
      {
        sum_saturation += s.saturations[j];
        if ( s.equal_next[j] && s.saturations[j] > s.saturations[j + 1u] )
          ordered = false;
      }
      if ( ordered )
      {
        std::fill( s.totals.begin(), s.totals.end(), 0 );
        for ( auto j = first_active; j < d; ++j )
        {
          auto const cap = s.saturations[j];
          auto const& drive = s.drives[j];
          for ( auto p = 0u; p < assignments_; ++p )
            s.totals[p] += std::min( drive[p], cap );
        }
        emit_thresholds( sum_saturation, index, s, out, [&]( int theta ) {
          nltu_params params{ s.rows, s.saturations, theta };
          return parameter_set{ std::move( params ) };
        } );
      }
      else
      {
        out.pruned += static_cast<std::uint64_t>( sum_saturation ) + 1u;
      }

      /* odometer over s_j in 1..max(1, rowsum_j), last subunit fastest */
      auto j = static_cast<int>( d ) - 1;
      for ( ; j >= 0; --j )
      {
        if ( s.saturations[j] < std::max( 1, s.rowsums[j] ) )
        {
          ++s.saturations[j];
          break;
        }
        s.saturations[j] = 1;
      }
      if ( j < 0 )
        break;
    }
  }

  void report_progress( std::uint64_t chunk )
  {
    if ( !options_.progress )
      return;
    auto const now = std::chrono::steady_clock::now();
    std::scoped_lock lock( progress_mutex_ );
    if ( now - last_report_ < std::chrono::seconds( 2 ) )
      return;
    last_report_ = now;
    *options_.progress << fmt::format( "[search] {}: chunk {}/{} visited~{}\n", spec_.describe(), chunk + 1u,
                                       num_chunks_, visited_.load() );
    options_.progress->flush();
  }

  search_spec spec_;
  search_options options_;
  std::uint32_t assignments_;
  std::vector<column> columns_;
  std::uint64_t radix_ = 1u;
  std::uint64_t space_ = 1u;
  std::uint64_t chunk_size_ = 1u;
  std::uint64_t num_chunks_ = 1u;

  std::atomic<std::uint64_t> next_chunk_{ 0u };
  std::atomic<std::uint64_t> visited_{ 0u };
  std::atomic<bool> aborted_{ false };

  std::mutex progress_mutex_;
  std::chrono::steady_clock::time_point started_;
  std::chrono::steady_clock::time_point last_report_;
};

} // namespace

search_result enumerate_functions( search_spec const& spec, search_options const& options )
{
  spec.validate();
  enumerator e( spec, options );
  return e.run();
}

std::string_view to_string( capacity_criterion criterion )
{
  return criterion == capacity_criterion::function_count ? "function_count" : "contains_target";
}

budget_result minimal_budget_for_capacity( model_kind model, unsigned arity, function_set const& target,
                                           budget_search_options const& options )
{
  if ( target.arity() != arity )
  {
    throw contract_error( "target set arity does not match the requested arity" );
  }
  auto const masks = target.sorted_masks();
  std::optional<search_result> best;
  std::size_t best_covered = 0u;
  for ( auto k = 1u; k <= options.budget_cap; ++k )
  {
    search_spec spec{ arity, model, k, options.max_subunits };
    auto result = enumerate_functions( spec, options.search );
    auto const covered = static_cast<std::size_t>(
        std::ranges::count_if( masks, [&]( auto m ) { return result.functions.contains( m ); } ) );
    auto const reached = options.criterion == capacity_criterion::function_count
                             ? result.functions.size() >= target.size()
                             : covered == target.size();
    if ( options.search.progress )
    {
      *options.search.progress << fmt::format( "[budget] {} n={} k={}: {} functions, {}/{} target functions\n",
                                               to_string( model ), arity, k, result.functions.size(), covered,
                                               target.size() );
    }
    if ( reached )
    {
      if ( model == model_kind::ltu && !( result.functions == target ) )
      {
        throw std::logic_error( fmt::format( "LTU at n={} k={} reached the target count without equal sets; "
                                             "the target is not a threshold-function set",
                                             arity, k ) );
      }
      return { k, std::move( result ) };
    }
    best_covered = covered;
    best = std::move( result );
  }
  throw budget_not_reached( fmt::format( "{} at n={} did not reach the target ({}) within budget {} ({}/{} reached)",
                                         to_string( model ), arity, to_string( options.criterion ),
                                         options.budget_cap, best_covered, target.size() ),
                            options.budget_cap, best_covered,
                            best ? std::move( *best ) : search_result{ {}, function_set( arity ), 0u, 0u, {} } );
}

void write_witnesses( std::ostream& os, search_result const& result )
{
  if ( result.witnesses.size() != result.functions.size() )
    throw contract_error( "search result was produced without witnesses" );
  for ( auto const& [mask, params] : result.witnesses )
  {
    nlohmann::json record;
    record["mask"] = to_hex( mask );
    record["n"] = result.spec.arity;
    std::visit( [&]( auto const& p ) { record["params"] = p; }, params );
    os << record.dump() << '\n';
  }
}

} // namespace nltu
