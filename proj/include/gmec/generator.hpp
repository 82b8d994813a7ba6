#pragma once

// Seeded planted instances: two uniform haplotypes, rows copy an interval of
// their side's haplotype, then each entry flips with probability flip_rate.

#include <random>

#include "core.hpp"

namespace gmec {

enum class Family
{
    Binary,
    Swc,
    SubintervalFree,
    Rooted,
    General,
    AdversarialDensity
};

inline constexpr std::array<std::pair<Family, std::string_view>, 6> family_names{ {
    { Family::Binary, "binary" },
    { Family::Swc, "swc" },
    { Family::SubintervalFree, "subinterval-free" },
    { Family::Rooted, "rooted" },
    { Family::General, "general" },
    { Family::AdversarialDensity, "adversarial-density" },
} };

inline std::string_view to_string ( Family f )
{
    for ( auto [x, name] : family_names )
        if ( x == f )
            return name;
    return "?";
}

inline Family parse_family ( std::string_view s )
{
    for ( auto [x, name] : family_names )
        if ( name == s )
            return x;
    throw MecError( "unknown family '" + std::string( s ) + "'" );
}

struct GenSpec
{
    int           n         = 12;
    int           m         = 8;
    double        flip_rate = 0.1;
    Family        family    = Family::Swc;
    double        balance   = 0.5;// fraction of rows on haplotype A
    std::uint64_t seed      = 1;
    int           root      = 0;// rooted family; 0 picks the middle column

    void check () const
    {
        if ( n < 1 || m < 1 )
            throw MecError( "gen: n and m must be positive" );
        if ( !( flip_rate >= 0 && flip_rate <= 0.5 ) )
            throw MecError( "gen: flip rate must lie in [0, 1/2]" );
        if ( !( balance > 0 && balance < 1 ) )
            throw MecError( "gen: balance must lie in (0, 1)" );
        if ( family == Family::Rooted && ( root < 0 || root > m ) )
            throw MecError( "gen: root column out of range" );
        if ( family == Family::AdversarialDensity && n < 2 )
            throw MecError( "gen: adversarial-density needs at least two rows" );
    }

    int root_column () const { return root > 0 ? root : ( m + 1 ) / 2; }
};

struct Generated
{
    FragmentMatrix matrix;
    SolutionPair   planted;// haplotypes, true labels, cost = number of flips
};

namespace detail {

/// Intervals per family; sorted where the family prescribes an order.
template < typename Rng >
std::vector<std::pair<int, int>> draw_spans ( const GenSpec & spec, Rng & rng )
{
    const int n = spec.n, m = spec.m;
    auto uni = [&] ( int lo, int hi ) { return std::uniform_int_distribution<int>( lo, hi )( rng ); };

    std::vector<std::pair<int, int>> spans;
    switch ( spec.family )
    {
    case Family::Binary:
        spans.assign( std::size_t( n ), { 1, m } );
        break;
    case Family::Swc:
        for ( int i = 0; i < n; ++i )
            spans.emplace_back( 1, uni( 1, m ) );
        break;
    case Family::AdversarialDensity:
    {
        // one full row per side, everything else short
        const int short_len = std::max( 1, m / 4 );
        for ( int i = 0; i < n; ++i )
            spans.emplace_back( 1, i < 2 ? m : uni( 1, short_len ) );
        break;
    }
    case Family::Rooted:
    {
        const int r = spec.root_column();
        for ( int i = 0; i < n; ++i )
            spans.emplace_back( uni( 1, r ), uni( r, m ) );
        break;
    }
    case Family::General:
        for ( int i = 0; i < n; ++i )
        {
            const int s = uni( 1, m );
            spans.emplace_back( s, uni( s, m ) );
        }
        break;
    case Family::SubintervalFree:
    {
        // sorted starts, lengths in [ceil(m/4), ceil(m/2)], ends pushed right to avoid containment
        const int lo = std::max( 1, ( m + 3 ) / 4 ), hi = std::max( 1, ( m + 1 ) / 2 );
        std::vector<int> starts;
        for ( int i = 0; i < n; ++i )
            starts.push_back( uni( 1, m ) );
        std::sort( starts.begin(), starts.end() );
        for ( int i = 0; i < n; ++i )
        {
            int s = starts[std::size_t( i )];
            int e = std::min( m, s + uni( lo, hi ) - 1 );
            if ( i > 0 )
            {
                const auto [ps, pe] = spans.back();
                if ( s == ps )
                    e = pe;
                else if ( e <= pe )
                {
                    e = pe + 1;
                    if ( e > m )
                    {
                        s = ps;
                        e = pe;
                    }
                }
            }
            spans.emplace_back( s, e );
        }
        break;
    }
    }
    return spans;
}

}// namespace detail

inline Generated generate ( const GenSpec & spec )
{
    spec.check();
    std::mt19937_64 rng( spec.seed );
    std::bernoulli_distribution coin( 0.5 ), flip( spec.flip_rate );

    BitString hap[2];
    for ( auto & h : hap )
        for ( int c = 0; c < spec.m; ++c )
            h.push_back( coin( rng ) ? '1' : '0' );

    // exactly round(balance * n) rows on A, at shuffled positions
    int on_a = int( std::lround( spec.balance * spec.n ) );
    if ( spec.n >= 2 )
        on_a = std::clamp( on_a, 1, spec.n - 1 );
    Assignment labels( std::size_t( spec.n ), Label::B );
    std::fill_n( labels.begin(), on_a, Label::A );
    std::shuffle( labels.begin(), labels.end(), rng );
    if ( spec.family == Family::AdversarialDensity )
    {
        // the two full rows come first, one per side
        labels[0] = Label::A;
        labels[1] = Label::B;
    }

    auto spans = detail::draw_spans( spec, rng );

    std::vector<std::pair<Row, Label>> rows;
    for ( int i = 0; i < spec.n; ++i )
    {
        const auto [s, e] = spans[std::size_t( i )];
        const Label l     = labels[std::size_t( i )];
        std::string bits  = hap[l == Label::A ? 0 : 1].substr( std::size_t( s - 1 ), std::size_t( e - s + 1 ) );
        for ( auto & b : bits )
            if ( flip( rng ) )
                b = b == '0' ? '1' : '0';
        rows.push_back( { Row{ s, std::move( bits ) }, l } );
    }
    if ( spec.family == Family::Swc || spec.family == Family::AdversarialDensity )
        std::stable_sort( rows.begin(), rows.end(), [] ( auto & x, auto & y ) { return x.first.length() < y.first.length(); } );

    Generated g;
    std::vector<Row> rs;
    for ( auto & [r, l] : rows )
    {
        rs.push_back( std::move( r ) );
        g.planted.assignment.push_back( l );
    }
    g.matrix              = FragmentMatrix( spec.m, std::move( rs ) );
    g.planted.sigma       = hap[0];
    g.planted.sigma_prime = hap[1];
    g.planted.cost        = cost_fixed( g.matrix, g.planted.sigma, g.planted.sigma_prime, g.planted.assignment );
    return g;
}

/// Does M meet the structural promise of `f`?
inline bool matches_family ( const FragmentMatrix & M, Family f, int root = 0 )
{
    switch ( f )
    {
    case Family::Binary:
        return is_binary( M );
    case Family::Swc:
    case Family::AdversarialDensity:
        return is_swc( M );
    case Family::SubintervalFree:
        return is_subinterval_free( M );
    case Family::Rooted:
        return std::all_of( M.rows().begin(), M.rows().end(), [&] ( const Row & r ) { return r.crosses( root ); } );
    case Family::General:
        return true;
    }
    return false;
}

}// namespace gmec
