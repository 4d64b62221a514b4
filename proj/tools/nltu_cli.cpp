#include <nltu/cli.hpp>

#include <iostream>

int main( int argc, char** argv )
{
  try
  {
    auto const config = nltu::parse_args( argc, argv );
    return nltu::run( config, std::cout, std::cerr );
  }
  catch ( nltu::usage_error const& e )
  {
    ( e.exit_code() == 0 ? std::cout : std::cerr ) << e.what() << ( e.exit_code() == 0 ? "" : "\n" );
    return e.exit_code();
  }
}
