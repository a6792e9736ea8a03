#include "ballscope/cli.hpp"

int main(int argc, char** argv)
{
    return ballscope::cli::run(argc, argv);
}
