#pragma once

// Text formats.
//   .mec      first line "n m", then n lines of exactly m characters from {0,1,-}
//   solution  sigma, sigma', n labels from {A,B}, "cost <integer>"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "core.hpp"

namespace gmec {

class ParseError : public MecError
{
public:
    ParseError ( const std::string & source, int line, int column, const std::string & what )
        : MecError( source + ":" + std::to_string( line ) + ":" + std::to_string( column ) + ": " + what )
        , line( line )
        , column( column )
    {}

    int line, column;
};

struct RawInstance
{
    int                      n = 0, m = 0;
    std::vector<std::string> dense;
};

namespace detail {

inline bool next_line ( std::istream & in, std::string & line, int & number )
{
    if ( !std::getline( in, line ) )
        return false;
    ++number;
    if ( !line.empty() && line.back() == '\r' )
        line.pop_back();
    return true;
}

}// namespace detail

/// Reads the .mec text; checks header, widths, symbols and gaplessness with line/column positions.
inline RawInstance read_mec_raw ( std::istream & in, const std::string & source = "<input>" )
{
    RawInstance raw;
    std::string line;
    int         number = 0;
    if ( !detail::next_line( in, line, number ) )
        throw ParseError( source, 1, 1, "missing header \"n m\"" );
    {
        std::istringstream hs( line );
        std::string        rest;
        if ( !( hs >> raw.n >> raw.m ) || ( hs >> rest ) )
            throw ParseError( source, 1, 1, "header must be two integers \"n m\"" );
        if ( raw.n < 1 || raw.m < 1 )
            throw ParseError( source, 1, 1, "n and m must be positive" );
    }
    while ( int( raw.dense.size() ) < raw.n )
    {
        if ( !detail::next_line( in, line, number ) )
            throw ParseError( source, number + 1, 1,
                              "expected " + std::to_string( raw.n ) + " rows, found " + std::to_string( raw.dense.size() ) );
        for ( std::size_t c = 0; c < line.size(); ++c )
            if ( line[c] != '0' && line[c] != '1' && line[c] != '-' )
                throw ParseError( source, number, int( c ) + 1, std::string( "invalid symbol '" ) + line[c] + "'" );
        if ( int( line.size() ) != raw.m )
            throw ParseError( source, number, int( std::min<std::size_t>( line.size(), std::size_t( raw.m ) ) ) + 1,
                              "expected " + std::to_string( raw.m ) + " columns, found " + std::to_string( line.size() ) );
        const auto first = line.find_first_not_of( '-' );
        if ( first == std::string::npos )
            throw ParseError( source, number, 1, "row has no binary entries" );
        const auto last = line.find_last_not_of( '-' );
        if ( auto gap = line.find( '-', first ); gap != std::string::npos && gap < last )
            throw ParseError( source, number, int( gap ) + 1, "wildcard inside the binary part" );
        raw.dense.push_back( line );
    }
    while ( detail::next_line( in, line, number ) )
        if ( line.find_first_not_of( " \t" ) != std::string::npos )
            throw ParseError( source, number, 1, "unexpected content after " + std::to_string( raw.n ) + " rows" );
    return raw;
}

inline FragmentMatrix read_mec ( std::istream & in, const std::string & source = "<input>" )
{
    return FragmentMatrix::from_dense( read_mec_raw( in, source ).dense );
}

inline FragmentMatrix load_mec ( const std::string & path )
{
    std::ifstream in( path );
    if ( !in )
        throw MecError( "cannot open " + path );
    return read_mec( in, path );
}

inline void write_mec ( std::ostream & out, const FragmentMatrix & M )
{
    out << M.n() << ' ' << M.m() << '\n';
    for ( int i = 0; i < M.n(); ++i )
        out << M.dense_row( i ) << '\n';
}

inline void write_solution ( std::ostream & out, const SolutionPair & s )
{
    out << s.sigma << '\n' << s.sigma_prime << '\n' << to_string( s.assignment ) << '\n' << "cost " << s.cost << '\n';
}

inline SolutionPair read_solution ( std::istream & in, const std::string & source = "<solution>" )
{
    SolutionPair s;
    std::string  line;
    int          number = 0;
    auto need = [&] ( const char * what ) {
        if ( !detail::next_line( in, line, number ) )
            throw ParseError( source, number + 1, 1, std::string( "missing " ) + what );
    };
    auto binary = [&] () {
        if ( auto bad = line.find_first_not_of( "01" ); bad != std::string::npos )
            throw ParseError( source, number, int( bad ) + 1, "expected a binary string" );
        return line;
    };
    need( "sigma" );
    s.sigma = binary();
    need( "sigma'" );
    s.sigma_prime = binary();
    if ( s.sigma.size() != s.sigma_prime.size() )
        throw ParseError( source, number, 1, "sigma and sigma' differ in length" );
    need( "assignment" );
    for ( std::size_t c = 0; c < line.size(); ++c )
    {
        if ( line[c] != 'A' && line[c] != 'B' )
            throw ParseError( source, number, int( c ) + 1, "labels must be A or B" );
        s.assignment.push_back( line[c] == 'A' ? Label::A : Label::B );
    }
    need( "cost line" );
    std::istringstream cs( line );
    std::string        word;
    if ( !( cs >> word >> s.cost ) || word != "cost" )
        throw ParseError( source, number, 1, "expected \"cost <integer>\"" );
    return s;
}

inline nlohmann::json to_json ( const SolutionPair & s )
{
    return nlohmann::json{ { "sigma", s.sigma }, { "sigma_prime", s.sigma_prime }, { "assignment", to_string( s.assignment ) },
                           { "cost", s.cost } };
}

}// namespace gmec
