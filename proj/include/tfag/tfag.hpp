#pragma once

// Torsion-free abelian groups of finite rank: exact models, decompositions,
// Jonsson bases and strong indecomposability.

#include "tfag/linalg.hpp"
#include "tfag/primes.hpp"
#include "tfag/types.hpp"
#include "tfag/group.hpp"
#include "tfag/quotient.hpp"
#include "tfag/bases.hpp"
#include "tfag/splitting.hpp"
#include "tfag/quasi.hpp"
#include "tfag/obstruction.hpp"
#include "tfag/decompositions.hpp"
#include "tfag/jonsson.hpp"
#include "tfag/strong_indec.hpp"
#include "tfag/oracle.hpp"
#include "tfag/corpus.hpp"
#include "tfag/io.hpp"
#include "tfag/properties.hpp"
