#include <random>

#include <gtest/gtest.h>

#include <gmec/oracle.hpp>
#include <gmec/subinterval.hpp>

#include "test_util.hpp"

using namespace gmec;
using namespace gmec::testing;

namespace {

FragmentMatrix spans_matrix ( int m, const std::vector<std::pair<int, int>> & spans )
{
    std::vector<Row> rows;
    for ( auto [s, e] : spans )
        rows.push_back( Row{ s, std::string( std::size_t( e - s + 1 ), '0' ) } );
    return FragmentMatrix( m, std::move( rows ) );
}

double ratio ( long got, long opt )
{
    return opt == 0 ? ( got == 0 ? 1.0 : 1e9 ) : double( got ) / double( opt );
}

}// namespace

TEST( QSequence, Examples )
{
    const auto q = build_qsequence( spans_matrix( 8, { { 1, 4 }, { 3, 6 }, { 5, 8 } } ) );
    EXPECT_EQ( q.columns, ( std::vector<int>{ 4, 8 } ) );
    EXPECT_EQ( q.root_of, ( std::vector<int>{ 0, 0, 1 } ) );

    EXPECT_EQ( build_qsequence( spans_matrix( 6, { { 2, 5 } } ) ).columns, std::vector<int>{ 5 } );
    EXPECT_THROW( build_qsequence( spans_matrix( 6, { { 1, 5 }, { 2, 3 } } ) ), MecError );
}

TEST( QSequence, ExactlyOneCrossingOnRandomInstances )
{
    for ( unsigned seed = 1; seed <= 50; ++seed )
    {
        std::mt19937_64 rng( seed );
        const auto      M = spans_matrix( 30, subinterval_free_spans( rng, 20, 30, 2, 10 ) );
        ASSERT_TRUE( is_subinterval_free( M ) );
        const auto q = build_qsequence( M );
        ASSERT_TRUE( std::is_sorted( q.columns.begin(), q.columns.end() ) );
        for ( int i = 0; i < M.n(); ++i )
        {
            int hits = 0;
            for ( int c : q.columns )
                hits += M.row( i ).crosses( c );
            EXPECT_EQ( hits, 1 );
        }
    }
}

TEST( Dominance, Examples )
{
    const Epsilon half;
    const std::vector<long> a{ 8 }, b{ 2 }, c{ 3 }, none;
    EXPECT_TRUE( dominates( a, b, half ) );
    EXPECT_FALSE( dominates( a, c, half ) );
    EXPECT_TRUE( dominates( none, none, half ) );
    // a zero count on either side is vacuous
    EXPECT_TRUE( dominates( std::vector<long>{ 1 }, std::vector<long>{ 0 }, half ) );
}

TEST( Dominance, SubmatrixForm )
{
    // rows 0,1 span [1,4], rows 2 spans [4,6]; shared column 4 has 2 vs 1 A-rows
    const auto M = spans_matrix( 6, { { 1, 4 }, { 1, 4 }, { 4, 6 } } );
    const Assignment ref{ Label::A, Label::A, Label::A };
    const std::vector<int> left{ 0, 1 }, right{ 2 };
    EXPECT_FALSE( dominates( M, left, right, ref, Label::A, Epsilon{} ) );
    const Assignment ref_b{ Label::A, Label::A, Label::B };
    EXPECT_TRUE( dominates( M, left, right, ref_b, Label::A, Epsilon{} ) );
}

TEST( Dominance, Intervals )
{
    const Epsilon half;
    // counts cross at one column
    const std::vector<long> l1{ 8, 4, 2 }, r1{ 1, 2, 8 };
    const auto rep1 = dominance_intervals( l1, r1, 5, half );
    EXPECT_EQ( rep1.width(), 1 );
    EXPECT_EQ( rep1.lo, 6 );

    // ratios between 1 and 4 over three columns
    const std::vector<long> l2{ 9, 6, 5, 4, 1 }, r2{ 1, 3, 4, 5, 9 };
    const auto rep2 = dominance_intervals( l2, r2, 1, half );
    EXPECT_EQ( rep2.width(), 3 );
    EXPECT_EQ( rep2.lo, 2 );
    EXPECT_EQ( rep2.hi, 4 );

    // disjoint spans
    const auto M = spans_matrix( 8, { { 1, 3 }, { 5, 8 } } );
    const Assignment ref{ Label::A, Label::A };
    EXPECT_TRUE( dominance_intervals( M, std::vector<int>{ 0 }, std::vector<int>{ 1 }, ref, Label::A, half ).empty() );

    // non-monotone counts are an internal error
    const std::vector<long> l3{ 1, 9 }, r3{ 9, 1 };
    EXPECT_THROW( dominance_intervals( l3, r3, 1, half ), MecError );
}

TEST( Rooted, IdenticalFullRows )
{
    const auto M = mat( { "0110", "0110", "0110", "0110", "0110" } );
    EXPECT_EQ( solve_rooted( M, 2, Precision{} ).cost, 0 );
}

TEST( Rooted, RejectsRowMissingRoot )
{
    const auto M = mat( { "01--", "--10" } );
    EXPECT_THROW( solve_rooted( M, 2, Precision{} ), MecError );
}

TEST( Rooted, NoiseFree )
{
    for ( unsigned seed = 1; seed <= 10; ++seed )
    {
        std::mt19937_64 rng( seed );
        const auto      p = planted_intervals( rng, 10, rooted_spans( rng, 12, 10, 5 ), 0.0 );
        EXPECT_EQ( solve_rooted( p.M, 5, Precision{} ).cost, 0 ) << "seed " << seed;
    }
}

TEST( Rooted, OracleGate )
{
    for ( unsigned seed = 1; seed <= 10; ++seed )
    {
        std::mt19937_64 rng( 40 + seed );
        const auto      p   = planted_intervals( rng, 10, rooted_spans( rng, 14, 10, 5 ), 0.1 );
        const long      opt = exact_bipartition( p.M ).cost;
        const auto      got = solve_rooted( p.M, 5, Precision{} );
        EXPECT_EQ( got.cost, cost_fixed( p.M, got.sigma, got.sigma_prime, got.assignment ) );
        EXPECT_GE( got.cost, opt );
        EXPECT_LE( ratio( got.cost, opt ), 1.5 ) << "seed " << seed;
    }
}

TEST( Rooted, RootOneMatchesDpPair )
{
    for ( unsigned seed = 1; seed <= 5; ++seed )
    {
        std::mt19937_64 rng( 70 + seed );
        const auto      p   = planted_swc( rng, 12, 8, 0.1 );
        const long      opt = exact_bipartition( p.M ).cost;
        EXPECT_LE( ratio( solve_rooted( p.M, 1, Precision{} ).cost, opt ), 1.5 );
        EXPECT_LE( ratio( solve_dp_pair( p.M, Precision{} ).cost, opt ), 1.5 );
    }
}

TEST( Rooted, ReversalSymmetry )
{
    for ( unsigned seed = 1; seed <= 5; ++seed )
    {
        std::mt19937_64 rng( 90 + seed );
        const auto      p = planted_intervals( rng, 9, rooted_spans( rng, 10, 9, 4 ), 0.15 );
        const auto      f = solve_rooted( p.M, 4, Precision{} );
        const auto      b = solve_rooted( reversed( p.M ), 9 + 1 - 4, Precision{} );
        EXPECT_EQ( f.cost, b.cost );
    }
}

TEST( SubintervalFree, SingleRootEqualsRooted )
{
    std::mt19937_64 rng( 5 );
    const auto      p = planted_intervals( rng, 9, { { 1, 5 }, { 1, 5 }, { 2, 6 }, { 3, 7 }, { 4, 8 }, { 5, 9 } }, 0.1 );
    const auto      q = build_qsequence( p.M );
    ASSERT_EQ( q.columns.size(), 1u );
    const auto a = solve_subinterval_free( p.M, Precision{} );
    const auto b = solve_rooted( p.M, q.columns[0], Precision{} );
    EXPECT_EQ( a.cost, b.cost );
    EXPECT_EQ( a.sigma, b.sigma );
}

TEST( SubintervalFree, TwoRootsEmptyInterval )
{
    for ( unsigned seed = 1; seed <= 5; ++seed )
    {
        std::mt19937_64 rng( 110 + seed );
        // two root groups sharing no columns
        std::vector<std::pair<int, int>> spans{ { 1, 4 }, { 1, 4 }, { 2, 5 }, { 2, 5 }, { 3, 6 }, { 3, 6 },
                                                { 7, 10 }, { 7, 10 }, { 8, 11 }, { 8, 11 }, { 9, 12 }, { 9, 12 } };
        const auto p   = planted_intervals( rng, 12, spans, 0.1 );
        const auto q   = build_qsequence( p.M );
        ASSERT_GE( q.columns.size(), 2u );
        const long opt = exact_bipartition( p.M ).cost;
        const auto got = solve_subinterval_free( p.M, Precision{} );
        EXPECT_EQ( got.cost, cost_fixed( p.M, got.sigma, got.sigma_prime, got.assignment ) );
        EXPECT_LE( ratio( got.cost, opt ), 1.5 ) << "seed " << seed;
    }
}

TEST( SubintervalFree, TwoRootsWithOverlap )
{
    for ( unsigned seed = 1; seed <= 5; ++seed )
    {
        std::mt19937_64 rng( 130 + seed );
        std::vector<std::pair<int, int>> spans{ { 1, 5 }, { 1, 5 }, { 2, 6 }, { 2, 6 }, { 3, 7 }, { 4, 8 },
                                                { 6, 10 }, { 7, 11 }, { 7, 11 }, { 8, 12 }, { 9, 13 }, { 9, 13 } };
        const auto p   = planted_intervals( rng, 13, spans, 0.1 );
        ASSERT_TRUE( is_subinterval_free( p.M ) );
        ASSERT_GE( build_qsequence( p.M ).columns.size(), 2u );
        const long opt = exact_bipartition( p.M ).cost;
        const auto got = solve_subinterval_free( p.M, Precision{} );
        EXPECT_LE( ratio( got.cost, opt ), 1.5 ) << "seed " << seed;
    }
}

TEST( SubintervalFree, NoiseFreeAndSymmetric )
{
    for ( unsigned seed = 1; seed <= 8; ++seed )
    {
        std::mt19937_64 rng( 150 + seed );
        const auto      p = planted_intervals( rng, 16, subinterval_free_spans( rng, 14, 16, 4, 8 ), 0.0 );
        const auto      s = solve_subinterval_free( p.M, Precision{} );
        EXPECT_EQ( s.cost, 0 ) << "seed " << seed;
        EXPECT_EQ( solve_subinterval_free( reversed( p.M ), Precision{} ).cost, s.cost );
    }
}

TEST( SubintervalFree, RejectsContainment )
{
    EXPECT_THROW( solve_subinterval_free( mat( { "0110", "-1--" } ), Precision{} ), MecError );
}
