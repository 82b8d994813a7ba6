#include <random>

#include <gtest/gtest.h>

#include <gmec/length_class.hpp>
#include <gmec/oracle.hpp>

#include "test_util.hpp"

using namespace gmec;
using namespace gmec::testing;

namespace {

FragmentMatrix spans_matrix ( int m, const std::vector<std::pair<int, int>> & spans )
{
    std::vector<Row> rows;
    for ( auto [s, e] : spans )
        rows.push_back( Row{ s, std::string( std::size_t( e - s + 1 ), '1' ) } );
    return FragmentMatrix( m, std::move( rows ) );
}

double ratio ( long got, long opt )
{
    return opt == 0 ? ( got == 0 ? 1.0 : 1e9 ) : double( got ) / double( opt );
}

}// namespace

TEST( LengthClass, Examples )
{
    EXPECT_EQ( class_columns( 16, 1 ), ( std::vector<int>{ 4, 8, 12, 16 } ) );
    EXPECT_EQ( length_class( 16, 5 ), 1 );
    EXPECT_EQ( length_class( 16, 16 ), 0 );
    EXPECT_EQ( length_class( 16, 9 ), 0 );
    EXPECT_EQ( length_class( 16, 8 ), 1 );
    EXPECT_EQ( length_class( 16, 1 ), 4 );
    EXPECT_EQ( padded_width( 12 ), 16 );
    EXPECT_EQ( padded_width( 16 ), 16 );

    const auto idx = build_index( spans_matrix( 16, { { 3, 7 }, { 4, 8 } } ) );
    const auto & c = idx.classes[1];
    EXPECT_EQ( c.single, std::vector<int>{ 0 } );
    EXPECT_EQ( c.pair, std::vector<int>{ 1 } );
}

TEST( LengthClass, PaddingColumnsCarryNoRows )
{
    const auto idx = build_index( spans_matrix( 12, { { 1, 12 }, { 5, 7 }, { 12, 12 } } ) );
    EXPECT_EQ( idx.padded, 16 );
    EXPECT_EQ( idx.class_of, ( std::vector<int>{ 0, 2, 4 } ) );
}

TEST( LengthClass, FuzzedProperties )
{
    for ( unsigned seed = 1; seed <= 200; ++seed )
    {
        std::mt19937_64 rng( seed );
        std::uniform_int_distribution<int> mm( 1, 300 );
        const int  m = mm( rng );
        const auto M = random_gapless( rng, 30, m );
        const auto idx = build_index( M );// verifies internally
        std::size_t total = 0;
        for ( const auto & c : idx.classes )
        {
            total += c.rows.size();
            for ( int r : c.single )
                EXPECT_EQ( LengthClassIndex::crossings( M.row( r ), c.columns ), 1 );
            for ( int r : c.pair )
                EXPECT_EQ( LengthClassIndex::crossings( M.row( r ), c.columns ), 2 );
        }
        EXPECT_EQ( total, std::size_t( M.n() ) );
    }
}

TEST( General, SwcMatchesDpPair )
{
    std::mt19937_64 rng( 3 );
    const auto      p = planted_swc( rng, 12, 8, 0.1 );
    EXPECT_EQ( solve_general( p.M, Precision{} ).cost, solve_dp_pair( p.M, Precision{} ).cost );
}

TEST( General, SubintervalFreeCrossCheck )
{
    for ( unsigned seed = 1; seed <= 5; ++seed )
    {
        std::mt19937_64 rng( 20 + seed );
        const auto      p = planted_intervals( rng, 16, subinterval_free_spans( rng, 14, 16, 4, 8 ), 0.1 );
        const auto      g = solve_general( p.M, Precision{} ).cost;
        const auto      s = solve_subinterval_free( p.M, Precision{} ).cost;
        EXPECT_LE( double( g ), 1.1 * double( s ) ) << "seed " << seed;
    }
}

TEST( General, OracleGate )
{
    for ( unsigned seed = 1; seed <= 8; ++seed )
    {
        std::mt19937_64 rng( 40 + seed );
        std::uniform_int_distribution<int> st( 1, 16 ), len( 2, 16 );
        std::vector<std::pair<int, int>>   spans;
        for ( int i = 0; i < 16; ++i )
        {
            const int s = st( rng );
            spans.emplace_back( s, std::min( 16, s + len( rng ) - 1 ) );
        }
        const auto p   = planted_intervals( rng, 16, spans, 0.1 );
        const long opt = exact_bipartition( p.M ).cost;
        const auto got = solve_general( p.M, Precision{} );
        EXPECT_EQ( got.cost, cost_fixed( p.M, got.sigma, got.sigma_prime, got.assignment ) );
        EXPECT_GE( got.cost, opt );
        EXPECT_LE( ratio( got.cost, opt ), 1.5 ) << "seed " << seed;
    }
}

TEST( General, NoiseFree )
{
    for ( unsigned seed = 1; seed <= 8; ++seed )
    {
        std::mt19937_64 rng( 60 + seed );
        std::uniform_int_distribution<int> st( 1, 16 ), len( 3, 16 );
        std::vector<std::pair<int, int>>   spans;
        for ( int i = 0; i < 16; ++i )
        {
            const int s = st( rng );
            spans.emplace_back( s, std::min( 16, s + len( rng ) - 1 ) );
        }
        const auto p = planted_intervals( rng, 16, spans, 0.0 );
        EXPECT_EQ( solve_general( p.M, Precision{} ).cost, 0 ) << "seed " << seed;
    }
}
