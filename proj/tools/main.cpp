#include "havt/report.hpp"

int main(int argc, char** argv) { return havt::run_cli(argc, argv); }
