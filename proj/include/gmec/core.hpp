#pragma once

// Instance and solution model for gapless minimum error correction.
//
// Columns are 1-based everywhere in the public API. Bit strings are stored
// as std::string over {'0','1'}; character k holds column k+1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmec {

class MecError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Symbol : std::uint8_t { Zero, One, Wildcard };

constexpr char to_char ( Symbol s ) noexcept
{
    switch ( s )
    {
        case Symbol::Zero: return '0';
        case Symbol::One:  return '1';
        default:           return '-';
    }
}

inline Symbol symbol_from_char ( char c )
{
    switch ( c )
    {
        case '0': return Symbol::Zero;
        case '1': return Symbol::One;
        case '-': return Symbol::Wildcard;
        default:
            throw MecError( std::string( "invalid symbol '" ) + c + "'" );
    }
}

/// 1 iff one symbol is 0 and the other is 1.
constexpr int dist ( Symbol a, Symbol b ) noexcept
{
    return ( a == Symbol::Zero && b == Symbol::One ) || ( a == Symbol::One && b == Symbol::Zero ) ? 1 : 0;
}

/// Symbol-wise distance of two strings over {0,1,-}.
inline long dist ( std::string_view s, std::string_view t )
{
    if ( s.size() != t.size() )
        throw MecError( "dist: length mismatch" );

    long d = 0;
    for ( std::size_t k = 0; k < s.size(); ++k )
        d += dist( symbol_from_char( s[k] ), symbol_from_char( t[k] ) );
    return d;
}

using BitString = std::string;

enum class Label : std::uint8_t { A, B };

constexpr char to_char ( Label l ) noexcept { return l == Label::A ? 'A' : 'B'; }
constexpr Label other ( Label l ) noexcept { return l == Label::A ? Label::B : Label::A; }

using Assignment = std::vector<Label>;

inline std::string to_string ( const Assignment & a )
{
    std::string s;
    s.reserve( a.size() );
    for ( auto l : a )
        s.push_back( to_char( l ) );
    return s;
}

//
// a row: contiguous binary part starting at column `start`
//
struct Row
{
    int         start = 1;
    std::string bits;

    int end () const noexcept { return start + int( bits.size() ) - 1; }
    int length () const noexcept { return int( bits.size() ); }

    bool crosses ( int col ) const noexcept { return col >= start && col <= end(); }

    Symbol at ( int col ) const noexcept
    {
        if ( !crosses( col ) )
            return Symbol::Wildcard;
        return bits[col - start] == '1' ? Symbol::One : Symbol::Zero;
    }

    /// +1 for '1', -1 for '0', 0 outside the binary part.
    int signed_at ( int col ) const noexcept
    {
        if ( !crosses( col ) )
            return 0;
        return bits[col - start] == '1' ? 1 : -1;
    }

    bool operator== ( const Row & ) const = default;
};

class FragmentMatrix
{
public:
    FragmentMatrix () = default;

    FragmentMatrix ( int m, std::vector<Row> rows )
        : _m( m ), _rows( std::move( rows ) )
    {
        if ( _m < 1 )
            throw MecError( "matrix needs at least one column" );
        if ( _rows.empty() )
            throw MecError( "matrix needs at least one row" );
        for ( std::size_t i = 0; i < _rows.size(); ++i )
        {
            const auto & r = _rows[i];
            if ( r.bits.empty() )
                throw MecError( "row " + std::to_string( i + 1 ) + " has no binary entries" );
            if ( r.start < 1 || r.end() > _m )
                throw MecError( "row " + std::to_string( i + 1 ) + " exceeds the column range" );
            if ( r.bits.find_first_not_of( "01" ) != std::string::npos )
                throw MecError( "row " + std::to_string( i + 1 ) + " has a non-binary entry in its binary part" );
        }
    }

    /// Build from dense rows over {0,1,-}; rows must match -*{0,1}+-*.
    static FragmentMatrix from_dense ( const std::vector<std::string> & dense );

    int n () const noexcept { return int( _rows.size() ); }
    int m () const noexcept { return _m; }

    const std::vector<Row> & rows () const noexcept { return _rows; }
    const Row & row ( int i ) const { return _rows.at( std::size_t( i ) ); }

    Symbol at ( int i, int col ) const { return row( i ).at( col ); }

    std::string dense_row ( int i ) const
    {
        const auto & r = row( i );
        std::string  s( std::size_t( _m ), '-' );
        std::copy( r.bits.begin(), r.bits.end(), s.begin() + ( r.start - 1 ) );
        return s;
    }

    std::vector<std::string> dense () const
    {
        std::vector<std::string> out;
        for ( int i = 0; i < n(); ++i )
            out.push_back( dense_row( i ) );
        return out;
    }

    bool operator== ( const FragmentMatrix & ) const = default;

private:
    int              _m = 0;
    std::vector<Row> _rows;
};

struct SolutionPair
{
    BitString  sigma;
    BitString  sigma_prime;
    Assignment assignment;
    long       cost = 0;

    bool operator== ( const SolutionPair & ) const = default;
};

/// Strict (cost, sigma, sigma', labels) order used for deterministic reductions.
inline bool better ( const SolutionPair & a, const SolutionPair & b )
{
    if ( a.cost != b.cost )
        return a.cost < b.cost;
    if ( a.sigma != b.sigma )
        return a.sigma < b.sigma;
    if ( a.sigma_prime != b.sigma_prime )
        return a.sigma_prime < b.sigma_prime;
    return a.assignment < b.assignment;
}

//
// distances and costs
//

/// Mismatches of row against s restricted to columns [first_col, last_col].
inline long row_dist ( const Row & r, std::string_view s, int first_col, int last_col ) noexcept
{
    const int lo = std::max( first_col, r.start );
    const int hi = std::min( last_col, r.end() );
    long      d  = 0;
    for ( int col = lo; col <= hi; ++col )
        d += ( r.bits[col - r.start] != s[col - 1] );
    return d;
}

inline long row_dist ( const Row & r, std::string_view s ) noexcept
{
    return row_dist( r, s, r.start, r.end() );
}

inline void check_strings ( const FragmentMatrix & M, std::string_view s, std::string_view t )
{
    if ( int( s.size() ) != M.m() || int( t.size() ) != M.m() )
        throw MecError( "solution strings must have length m" );
}

/// Default-assignment cost; ties go to A (sigma).
inline std::pair<long, Assignment> cost ( const FragmentMatrix & M, std::string_view sigma, std::string_view sigma_prime )
{
    check_strings( M, sigma, sigma_prime );

    Assignment labels( std::size_t( M.n() ) );
    long       total = 0;
    for ( int i = 0; i < M.n(); ++i )
    {
        const long da = row_dist( M.row( i ), sigma );
        const long db = row_dist( M.row( i ), sigma_prime );
        labels[std::size_t( i )] = ( da <= db ? Label::A : Label::B );
        total += std::min( da, db );
    }
    return { total, std::move( labels ) };
}

inline long cost_fixed ( const FragmentMatrix & M, std::string_view sigma, std::string_view sigma_prime, const Assignment & a )
{
    check_strings( M, sigma, sigma_prime );
    if ( int( a.size() ) != M.n() )
        throw MecError( "assignment length must equal n" );

    long total = 0;
    for ( int i = 0; i < M.n(); ++i )
        total += row_dist( M.row( i ), a[std::size_t( i )] == Label::A ? sigma : sigma_prime );
    return total;
}

/// Default cost of (sigma, sigma') over rows [row_lo, row_hi) and columns [1, last_col].
inline long cost_window ( const FragmentMatrix & M, std::string_view sigma, std::string_view sigma_prime,
                          int row_lo, int row_hi, int first_col, int last_col ) noexcept
{
    long total = 0;
    for ( int i = row_lo; i < row_hi; ++i )
    {
        const auto & r = M.row( i );
        total += std::min( row_dist( r, sigma, first_col, last_col ), row_dist( r, sigma_prime, first_col, last_col ) );
    }
    return total;
}

//
// per-column majority completion
//

/// Column-wise majority for rows carrying `label`; ties and empty columns give '1'.
inline BitString majority_string ( const FragmentMatrix & M, const Assignment & a, Label label )
{
    std::vector<long> balance( std::size_t( M.m() ), 0 );
    for ( int i = 0; i < M.n(); ++i )
    {
        if ( a[std::size_t( i )] != label )
            continue;
        const auto & r = M.row( i );
        for ( int col = r.start; col <= r.end(); ++col )
            balance[std::size_t( col - 1 )] += r.signed_at( col );
    }

    BitString s( std::size_t( M.m() ), '1' );
    for ( int col = 1; col <= M.m(); ++col )
        if ( balance[std::size_t( col - 1 )] < 0 )
            s[std::size_t( col - 1 )] = '0';
    return s;
}

inline SolutionPair majority_complete ( const FragmentMatrix & M, const Assignment & a )
{
    if ( int( a.size() ) != M.n() )
        throw MecError( "assignment length must equal n" );

    SolutionPair sol;
    sol.sigma       = majority_string( M, a, Label::A );
    sol.sigma_prime = majority_string( M, a, Label::B );
    sol.assignment  = a;
    sol.cost        = cost_fixed( M, sol.sigma, sol.sigma_prime, a );
    return sol;
}

/// Default assignment for the strings, then cost.
inline SolutionPair evaluate ( const FragmentMatrix & M, BitString sigma, BitString sigma_prime )
{
    auto [c, labels] = cost( M, sigma, sigma_prime );
    return SolutionPair{ std::move( sigma ), std::move( sigma_prime ), std::move( labels ), c };
}

/// Alternate default assignment and majority completion until the cost stops dropping.
inline SolutionPair polish ( const FragmentMatrix & M, SolutionPair sol )
{
    for ( ;; )
    {
        auto next = evaluate( M, sol.sigma, sol.sigma_prime );
        next      = majority_complete( M, next.assignment );
        next      = evaluate( M, next.sigma, next.sigma_prime );
        if ( next.cost >= sol.cost )
            return sol.cost == next.cost && better( next, sol ) ? next : sol;
        sol = std::move( next );
    }
}

//
// validation and classification
//

struct Diagnostics
{
    std::vector<std::string> errors;
    bool                     binary           = false;
    bool                     swc              = false;
    bool                     subinterval_free = false;

    bool ok () const noexcept { return errors.empty(); }

    std::string classification () const
    {
        if ( !ok() )
            return "invalid";
        std::string s;
        auto        add = [&] ( const char * t ) {
            if ( !s.empty() )
                s += ",";
            s += t;
        };
        if ( binary )
            add( "binary" );
        if ( swc )
            add( "swc" );
        if ( subinterval_free )
            add( "subinterval-free" );
        if ( s.empty() )
            s = "general";
        return s;
    }
};

/// True iff no row's column set is a strict subset of another row's.
inline bool is_subinterval_free ( const FragmentMatrix & M )
{
    // sort by (start asc, end desc); a strict containment exists iff some row
    // ends no later than a predecessor while differing from it
    std::vector<int> order( std::size_t( M.n() ) );
    for ( int i = 0; i < M.n(); ++i )
        order[std::size_t( i )] = i;
    std::sort( order.begin(), order.end(), [&] ( int x, int y ) {
        const auto & a = M.row( x );
        const auto & b = M.row( y );
        return a.start != b.start ? a.start < b.start : a.end() > b.end();
    } );

    int best_start = 0, best_end = 0;
    for ( std::size_t k = 0; k < order.size(); ++k )
    {
        const auto & r = M.row( order[k] );
        if ( k > 0 && r.end() <= best_end && !( r.start == best_start && r.end() == best_end ) )
            return false;
        if ( k == 0 || r.end() > best_end )
        {
            best_start = r.start;
            best_end   = r.end();
        }
    }
    return true;
}

inline bool is_swc ( const FragmentMatrix & M )
{
    return std::all_of( M.rows().begin(), M.rows().end(), [] ( const Row & r ) { return r.start == 1; } );
}

inline bool is_binary ( const FragmentMatrix & M )
{
    return std::all_of( M.rows().begin(), M.rows().end(), [&] ( const Row & r ) { return r.start == 1 && r.end() == M.m(); } );
}

inline Diagnostics classify ( const FragmentMatrix & M )
{
    Diagnostics d;
    d.binary           = is_binary( M );
    d.swc              = is_swc( M );
    d.subinterval_free = is_subinterval_free( M );
    return d;
}

/// Checks dense rows over {0,1,-}; classification is filled only when valid.
inline Diagnostics validate ( const std::vector<std::string> & dense, std::optional<int> m = std::nullopt )
{
    Diagnostics d;
    if ( dense.empty() )
        d.errors.push_back( "instance has no rows" );

    const std::size_t width = m ? std::size_t( *m ) : ( dense.empty() ? 0 : dense.front().size() );
    if ( width == 0 )
        d.errors.push_back( "instance has no columns" );

    for ( std::size_t i = 0; i < dense.size(); ++i )
    {
        const auto & s   = dense[i];
        const auto   tag = "row " + std::to_string( i + 1 ) + ": ";
        if ( s.size() != width )
        {
            d.errors.push_back( tag + "expected " + std::to_string( width ) + " columns, found " + std::to_string( s.size() ) );
            continue;
        }
        if ( auto bad = s.find_first_not_of( "01-" ); bad != std::string::npos )
        {
            d.errors.push_back( tag + "column " + std::to_string( bad + 1 ) + ": invalid symbol '" + s[bad] + "'" );
            continue;
        }
        const auto first = s.find_first_not_of( '-' );
        if ( first == std::string::npos )
        {
            d.errors.push_back( tag + "no binary entries" );
            continue;
        }
        const auto last = s.find_last_not_of( '-' );
        if ( auto gap = s.find( '-', first ); gap != std::string::npos && gap < last )
            d.errors.push_back( tag + "column " + std::to_string( gap + 1 ) + ": wildcard inside the binary part" );
    }

    if ( d.ok() )
    {
        auto M = FragmentMatrix::from_dense( dense );
        auto c = classify( M );
        d.binary           = c.binary;
        d.swc              = c.swc;
        d.subinterval_free = c.subinterval_free;
    }
    return d;
}

inline FragmentMatrix FragmentMatrix::from_dense ( const std::vector<std::string> & dense )
{
    if ( dense.empty() )
        throw MecError( "instance has no rows" );

    const int        m = int( dense.front().size() );
    std::vector<Row> rows;
    rows.reserve( dense.size() );
    for ( std::size_t i = 0; i < dense.size(); ++i )
    {
        const auto & s = dense[i];
        if ( int( s.size() ) != m )
            throw MecError( "row " + std::to_string( i + 1 ) + ": width differs from row 1" );
        const auto first = s.find_first_not_of( '-' );
        if ( first == std::string::npos )
            throw MecError( "row " + std::to_string( i + 1 ) + ": no binary entries" );
        const auto last = s.find_last_not_of( '-' );
        rows.push_back( Row{ int( first ) + 1, s.substr( first, last - first + 1 ) } );
        if ( rows.back().bits.find_first_not_of( "01" ) != std::string::npos )
            throw MecError( "row " + std::to_string( i + 1 ) + ": row is not gapless" );
    }
    return FragmentMatrix( m, std::move( rows ) );
}

//
// row permutations
//

/// Matrix with rows reordered so that new row k is old row order[k].
inline FragmentMatrix permute_rows ( const FragmentMatrix & M, std::span<const int> order )
{
    std::vector<Row> rows;
    rows.reserve( order.size() );
    for ( int i : order )
        rows.push_back( M.row( i ) );
    return FragmentMatrix( M.m(), std::move( rows ) );
}

/// Map an assignment on a permuted matrix back to original row order.
inline Assignment unpermute ( const Assignment & a, std::span<const int> order )
{
    Assignment out( a.size() );
    for ( std::size_t k = 0; k < order.size(); ++k )
        out[std::size_t( order[k] )] = a[k];
    return out;
}

/// Stable order by increasing binary-part length.
inline std::vector<int> standard_order ( const FragmentMatrix & M )
{
    std::vector<int> order( std::size_t( M.n() ) );
    for ( int i = 0; i < M.n(); ++i )
        order[std::size_t( i )] = i;
    std::stable_sort( order.begin(), order.end(), [&] ( int x, int y ) { return M.row( x ).length() < M.row( y ).length(); } );
    return order;
}

/// Columns and rows reversed: column j becomes m+1-j, row i becomes n-1-i.
inline FragmentMatrix reversed ( const FragmentMatrix & M )
{
    std::vector<Row> rows;
    rows.reserve( std::size_t( M.n() ) );
    for ( int i = M.n() - 1; i >= 0; --i )
    {
        const auto & r = M.row( i );
        rows.push_back( Row{ M.m() + 1 - r.end(), std::string( r.bits.rbegin(), r.bits.rend() ) } );
    }
    return FragmentMatrix( M.m(), std::move( rows ) );
}

inline BitString reversed ( BitString s )
{
    std::reverse( s.begin(), s.end() );
    return s;
}

/// Submatrix of columns [first_col, last_col], keeping only rows that cross it.
/// Column first_col becomes column 1. `kept` receives the original row index per new row.
inline FragmentMatrix column_slice ( const FragmentMatrix & M, int first_col, int last_col, std::vector<int> * kept = nullptr )
{
    std::vector<Row> rows;
    if ( kept )
        kept->clear();
    for ( int i = 0; i < M.n(); ++i )
    {
        const auto & r  = M.row( i );
        const int    lo = std::max( first_col, r.start );
        const int    hi = std::min( last_col, r.end() );
        if ( lo > hi )
            continue;
        rows.push_back( Row{ lo - first_col + 1, r.bits.substr( std::size_t( lo - r.start ), std::size_t( hi - lo + 1 ) ) } );
        if ( kept )
            kept->push_back( i );
    }
    return FragmentMatrix( last_col - first_col + 1, std::move( rows ) );
}

}// namespace gmec
