/*!
  \file plot.hpp
  \brief Hand-written SVG charts for the figure 2 and figure 3 reports
*/

#pragma once

#include "experiments.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nltu
{

enum class figure_kind
{
  figure2,
  figure3
};

figure_kind parse_figure_kind( std::string_view text );

/*! \brief One series per model: LTU as black squares, nLTU as red points.
           Rows whose budget search was not reached use open markers. */
std::string render_svg( std::vector<report_row> const& rows, figure_kind kind );

/*! \brief Reads a report CSV and writes the chart to `svg_path`. Nothing is
           written when the CSV is malformed or has no data rows. */
void emit_plot( std::filesystem::path const& csv_path, figure_kind kind, std::filesystem::path const& svg_path );

} // namespace nltu
