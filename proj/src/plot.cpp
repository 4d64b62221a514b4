#include "nltu/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace nltu
{

figure_kind parse_figure_kind( std::string_view text )
{
  if ( text == "figure2" )
    return figure_kind::figure2;
  if ( text == "figure3" )
    return figure_kind::figure3;
  throw std::invalid_argument( fmt::format( "unknown chart kind '{}', expected figure2 or figure3", text ) );
}

namespace
{

constexpr double width = 520.0;
constexpr double height = 380.0;
constexpr double left = 70.0;
constexpr double right = 130.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

double y_value( report_row const& row, figure_kind kind )
{
  return kind == figure_kind::figure2 ? static_cast<double>( row.budget ) : row.capacity_bits;
}

double nice_step( double span )
{
  auto const raw = span / 5.0;
  auto const magnitude = std::pow( 10.0, std::floor( std::log10( raw ) ) );
  for ( auto m : { 1.0, 2.0, 5.0 } )
  {
    if ( m * magnitude >= raw )
      return m * magnitude;
  }
  return 10.0 * magnitude;
}

} // namespace

std::string render_svg( std::vector<report_row> const& rows, figure_kind kind )
{
  if ( rows.empty() )
    throw std::invalid_argument( "cannot plot an empty report" );

  auto const [min_row, max_row] = std::ranges::minmax_element( rows, {}, &report_row::arity );
  auto const x_min = static_cast<double>( min_row->arity );
  auto const x_max = std::max( x_min + 1.0, static_cast<double>( max_row->arity ) );
  auto y_top = 0.0;
  for ( auto const& r : rows )
    y_top = std::max( y_top, y_value( r, kind ) );
  auto const step = nice_step( std::max( y_top, 1.0 ) );
  y_top = std::max( step, std::ceil( y_top / step ) * step );

  auto const plot_w = width - left - right;
  auto const plot_h = height - top - bottom;
  auto px = [&]( double x ) { return left + ( x - x_min ) / ( x_max - x_min ) * plot_w; };
  auto py = [&]( double y ) { return top + plot_h - y / y_top * plot_h; };

  std::string svg;
  svg += fmt::format( "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                      "font-family=\"sans-serif\" font-size=\"12\">\n",
                      width, height );
  svg += fmt::format( "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height );

  /* axes and ticks */
  svg += fmt::format( "<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", left,
                      top + plot_h, left + plot_w );
  svg += fmt::format( "<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", left, top,
                      top + plot_h );
  for ( auto x = static_cast<unsigned>( x_min ); x <= static_cast<unsigned>( x_max ); ++x )
  {
    svg += fmt::format( "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", px( x ),
                        top + plot_h + 18.0, x );
  }
  for ( auto y = 0.0; y <= y_top + 1e-9; y += step )
  {
    svg += fmt::format( "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n", left - 6.0, py( y ) + 4.0,
                        y );
    svg += fmt::format( "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n", left,
                        py( y ), left + plot_w );
  }

  auto const x_label = "Number of inputs";
  auto const y_label = kind == figure_kind::figure2 ? "Synapses per input for full LTU capacity"
                                                    : "Capacity (log2 of computable functions)";
  svg += fmt::format( "<text class=\"xlabel\" x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                      left + plot_w / 2.0, height - 15.0, x_label );
  svg += fmt::format( "<text class=\"ylabel\" transform=\"translate(18,{:.1f}) rotate(-90)\" "
                      "text-anchor=\"middle\">{}</text>\n",
                      top + plot_h / 2.0, y_label );

  for ( auto model : { model_kind::ltu, model_kind::nltu } )
  {
    std::vector<report_row> series;
    std::ranges::copy_if( rows, std::back_inserter( series ), [&]( auto const& r ) { return r.model == model; } );
    std::ranges::sort( series, {}, &report_row::arity );
    auto const color = model == model_kind::ltu ? "black" : "red";
    auto const name = to_string( model );

    if ( series.size() > 1u )
    {
      std::string points;
      for ( auto const& r : series )
        points += fmt::format( "{:.1f},{:.1f} ", px( r.arity ), py( y_value( r, kind ) ) );
      points.pop_back();
      svg += fmt::format( "<polyline class=\"{}-line\" points=\"{}\" fill=\"none\" stroke=\"{}\"/>\n", name, points,
                          color );
    }
    for ( auto const& r : series )
    {
      auto const x = px( r.arity );
      auto const y = py( y_value( r, kind ) );
      auto const cls = r.reached ? std::string( name ) : fmt::format( "{} not-reached", name );
      auto const fill = r.reached ? color : "none";
      if ( model == model_kind::ltu )
        svg += fmt::format( "<rect class=\"{}\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"8\" height=\"8\" fill=\"{}\" "
                            "stroke=\"{}\"/>\n",
                            cls, x - 4.0, y - 4.0, fill, color );
      else
        svg += fmt::format( "<circle class=\"{}\" cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"4\" fill=\"{}\" stroke=\"{}\"/>\n",
                            cls, x, y, fill, color );
    }
  }

  /* legend */
  auto const lx = left + plot_w + 20.0;
  svg += fmt::format( "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"8\" height=\"8\" fill=\"black\"/>\n", lx, top + 6.0 );
  svg += fmt::format( "<text x=\"{:.1f}\" y=\"{:.1f}\">LTU</text>\n", lx + 14.0, top + 14.0 );
  svg += fmt::format( "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"4\" fill=\"red\"/>\n", lx + 4.0, top + 30.0 );
  svg += fmt::format( "<text x=\"{:.1f}\" y=\"{:.1f}\">nLTU</text>\n", lx + 14.0, top + 34.0 );
  svg += "</svg>\n";
  return svg;
}

void emit_plot( std::filesystem::path const& csv_path, figure_kind kind, std::filesystem::path const& svg_path )
{
  std::ifstream is( csv_path );
  if ( !is )
    throw std::runtime_error( fmt::format( "cannot open {}", csv_path.string() ) );
  auto const svg = render_svg( read_csv( is ), kind );
  std::ofstream os( svg_path, std::ios::binary | std::ios::trunc );
  if ( !os )
    throw std::runtime_error( fmt::format( "cannot write {}", svg_path.string() ) );
  os << svg;
}

} // namespace nltu
