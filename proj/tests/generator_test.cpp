#include <gtest/gtest.h>

#include <gmec/bench.hpp>
#include <gmec/io.hpp>
#include <gmec/oracle.hpp>

using namespace gmec;

TEST( Generator, SameSeedSameOutput )
{
    for ( auto [f, name] : family_names )
    {
        GenSpec spec;
        spec.family = f;
        spec.seed   = 42;
        const auto a = generate( spec ), b = generate( spec );
        EXPECT_EQ( a.matrix.dense(), b.matrix.dense() ) << name;
        EXPECT_EQ( a.planted.assignment, b.planted.assignment ) << name;
        spec.seed = 43;
        EXPECT_NE( generate( spec ).matrix.dense(), a.matrix.dense() ) << name;
    }
}

TEST( Generator, FamiliesMeetTheirPromise )
{
    for ( auto [f, name] : family_names )
        for ( std::uint64_t seed = 1; seed <= 50; ++seed )
            for ( int m : { 1, 2, 5, 8, 13 } )
            {
                GenSpec spec;
                spec.family    = f;
                spec.m         = m;
                spec.n         = 2 + int( seed % 11 );
                spec.seed      = seed;
                spec.flip_rate = 0.2;
                const auto g   = generate( spec );
                ASSERT_TRUE( matches_family( g.matrix, f, spec.root_column() ) ) << name << " m=" << m << " seed=" << seed;
                EXPECT_TRUE( validate( g.matrix.dense(), m ).ok() );
                if ( f == Family::SubintervalFree )
                    for ( int i = 1; i < g.matrix.n(); ++i )
                    {
                        EXPECT_LE( g.matrix.row( i - 1 ).start, g.matrix.row( i ).start );
                        EXPECT_LE( g.matrix.row( i - 1 ).end(), g.matrix.row( i ).end() );
                    }
            }
}

TEST( Generator, SwcRowsInStandardOrder )
{
    GenSpec spec;
    spec.n = 20;
    spec.m = 10;
    for ( std::uint64_t seed = 1; seed <= 20; ++seed )
    {
        spec.seed    = seed;
        const auto M = generate( spec ).matrix;
        for ( int i = 1; i < M.n(); ++i )
            EXPECT_LE( M.row( i - 1 ).length(), M.row( i ).length() );
    }
}

TEST( Generator, PlantedCostCountsFlips )
{
    GenSpec spec;
    spec.flip_rate = 0;
    for ( auto [f, name] : family_names )
    {
        spec.family = f;
        EXPECT_EQ( generate( spec ).planted.cost, 0 ) << name;
    }
    spec.family    = Family::Binary;
    spec.flip_rate = 0.5;
    spec.n         = 10;
    spec.m         = 10;
    const auto g   = generate( spec );
    EXPECT_EQ( g.planted.cost, cost_fixed( g.matrix, g.planted.sigma, g.planted.sigma_prime, g.planted.assignment ) );
    EXPECT_GT( g.planted.cost, 0 );
}

TEST( Generator, OracleNeverAbovePlanted )
{
    for ( auto [f, name] : family_names )
        for ( std::uint64_t seed = 1; seed <= 15; ++seed )
        {
            GenSpec spec;
            spec.family = f;
            spec.n      = 12;
            spec.m      = 8;
            spec.seed   = seed;
            const auto g = generate( spec );
            EXPECT_LE( exact_bipartition( g.matrix ).cost, g.planted.cost ) << name << " seed=" << seed;
        }
}

TEST( Generator, BalanceGivesRowCounts )
{
    GenSpec spec;
    spec.n       = 20;
    spec.balance = 0.25;
    const auto g = generate( spec );
    EXPECT_EQ( std::count( g.planted.assignment.begin(), g.planted.assignment.end(), Label::A ), 5 );
}

TEST( Generator, RejectsBadSpecs )
{
    GenSpec spec;
    spec.flip_rate = 0.6;
    EXPECT_THROW( generate( spec ), MecError );
    spec           = {};
    spec.balance   = 1;
    EXPECT_THROW( generate( spec ), MecError );
    spec           = {};
    spec.n         = 0;
    EXPECT_THROW( generate( spec ), MecError );
    spec           = {};
    spec.family    = Family::Rooted;
    spec.root      = 9;
    EXPECT_THROW( generate( spec ), MecError );
    spec           = {};
    spec.family    = Family::AdversarialDensity;
    spec.n         = 1;
    EXPECT_THROW( generate( spec ), MecError );
    EXPECT_THROW( parse_family( "swcc" ), MecError );
    EXPECT_EQ( parse_family( "subinterval-free" ), Family::SubintervalFree );
}

TEST( Io, RoundTrip )
{
    GenSpec spec;
    spec.family = Family::General;
    const auto g = generate( spec );
    std::stringstream s;
    write_mec( s, g.matrix );
    EXPECT_EQ( read_mec( s ).dense(), g.matrix.dense() );

    std::stringstream t;
    write_solution( t, g.planted );
    const auto back = read_solution( t );
    EXPECT_EQ( back.sigma, g.planted.sigma );
    EXPECT_EQ( back.sigma_prime, g.planted.sigma_prime );
    EXPECT_EQ( back.assignment, g.planted.assignment );
    EXPECT_EQ( back.cost, g.planted.cost );
}

namespace {

std::pair<int, int> parse_failure ( const std::string & text )
{
    std::istringstream in( text );
    try
    {
        read_mec( in, "x.mec" );
    }
    catch ( const ParseError & e )
    {
        return { e.line, e.column };
    }
    return { 0, 0 };
}

}// namespace

TEST( Io, ErrorPositions )
{
    EXPECT_EQ( parse_failure( "" ), std::pair( 1, 1 ) );
    EXPECT_EQ( parse_failure( "2\n" ), std::pair( 1, 1 ) );
    EXPECT_EQ( parse_failure( "0 3\n" ), std::pair( 1, 1 ) );
    EXPECT_EQ( parse_failure( "2 3\n010\n01x\n" ), std::pair( 3, 3 ) );
    EXPECT_EQ( parse_failure( "2 3\n010\n01\n" ), std::pair( 3, 3 ) );
    EXPECT_EQ( parse_failure( "2 3\n010\n0-1\n" ), std::pair( 3, 2 ) );
    EXPECT_EQ( parse_failure( "2 3\n010\n---\n" ), std::pair( 3, 1 ) );
    EXPECT_EQ( parse_failure( "2 3\n010\n" ), std::pair( 3, 1 ) );
    EXPECT_EQ( parse_failure( "1 3\n010\n111\n" ), std::pair( 3, 1 ) );
    EXPECT_EQ( parse_failure( "2 3\r\n-10\r\n01-\r\n\n" ), std::pair( 0, 0 ) );
}

TEST( Io, SolutionErrors )
{
    auto fails = [] ( const std::string & text ) {
        std::istringstream in( text );
        try
        {
            read_solution( in );
        }
        catch ( const ParseError & )
        {
            return true;
        }
        return false;
    };
    EXPECT_TRUE( fails( "012\n011\nAB\ncost 1\n" ) );
    EXPECT_TRUE( fails( "01\n011\nAB\ncost 1\n" ) );
    EXPECT_TRUE( fails( "01\n01\nAC\ncost 1\n" ) );
    EXPECT_TRUE( fails( "01\n01\nAB\nprice 1\n" ) );
    EXPECT_TRUE( fails( "01\n01\n" ) );
    EXPECT_FALSE( fails( "01\n01\nAB\ncost 1\n" ) );
}

TEST( Io, JsonRecord )
{
    SolutionPair s{ "01", "10", { Label::A, Label::B }, 3 };
    const auto   j = to_json( s );
    EXPECT_EQ( j["assignment"], "AB" );
    EXPECT_EQ( j["cost"], 3 );
}

TEST( Bench, RatiosAndFlags )
{
    BenchRow r;
    EXPECT_EQ( r.ratio_text(), "failed" );
    r.cost = 6;
    EXPECT_EQ( r.ratio_text(), "over-budget" );
    r.opt = 4;
    EXPECT_EQ( r.ratio_text(), "3/2" );
    r.opt = 0;
    EXPECT_EQ( r.ratio_text(), "opt-zero" );
    EXPECT_FALSE( r.ratio() );
}

TEST( Bench, Quantiles )
{
    EXPECT_DOUBLE_EQ( median( { 3, 1, 2 } ), 2 );
    EXPECT_DOUBLE_EQ( median( { 4, 1, 2, 3 } ), 2.5 );
    std::vector<double> v;
    for ( int i = 1; i <= 20; ++i )
        v.push_back( i );
    EXPECT_DOUBLE_EQ( quantile( v, 0.95 ), 19 );
    EXPECT_DOUBLE_EQ( quantile( v, 1 ), 20 );
}

TEST( Bench, NoiseFreeCellsAreOptZero )
{
    BenchConfig cfg;
    cfg.seeds = 2;
    cfg.cells = { { Family::Swc, 8, 6, 0.0 }, { Family::Rooted, 8, 6, 0.0 } };
    const auto rows = bench_suite( cfg );
    ASSERT_EQ( rows.size(), 2u * ( 4 + 2 ) );
    for ( const auto & r : rows )
    {
        EXPECT_EQ( r.ratio_text(), "opt-zero" ) << r.instance << " " << r.algo << " " << r.error;
        EXPECT_EQ( r.cost, 0 );
    }
    for ( const auto & s : summarize( rows ) )
        EXPECT_EQ( s.defects, 0 );
}

TEST( Bench, ParallelMatchesSerial )
{
    auto cfg = named_suite( "quick" );
    auto a   = bench_suite( cfg );
    cfg.jobs = 3;
    auto b   = bench_suite( cfg );
    std::ostringstream x, y;
    write_csv( x, a, false );
    write_csv( y, b, false );
    EXPECT_EQ( x.str(), y.str() );
    EXPECT_EQ( x.str().substr( 0, x.str().find( '\n' ) ), "instance,family,n,m,algo,seed,cost,opt,ratio,ms,params" );
}

TEST( Bench, FailuresAreRecorded )
{
    BenchConfig cfg;
    cfg.seeds = 1;
    cfg.cells = { { Family::General, 8, 8, 0.1 } };
    cfg.algos = { "dp-pair" };
    const auto rows = bench_suite( cfg );
    ASSERT_EQ( rows.size(), 1u );
    EXPECT_FALSE( rows[0].cost );
    EXPECT_FALSE( rows[0].error.empty() );
    EXPECT_EQ( rows[0].ratio_text(), "failed" );
}
