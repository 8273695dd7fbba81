#pragma once

#include "fuzzpval/binomial.hpp"
#include "fuzzpval/compensated.hpp"
#include "fuzzpval/exact_tail.hpp"
#include "fuzzpval/fuzzy.hpp"
#include "fuzzpval/grid.hpp"
#include "fuzzpval/io.hpp"
#include "fuzzpval/membership.hpp"
#include "fuzzpval/normal.hpp"
#include "fuzzpval/nuisance.hpp"
#include "fuzzpval/parallel.hpp"
#include "fuzzpval/svg.hpp"
#include "fuzzpval/validity.hpp"
