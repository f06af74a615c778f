#pragma once

#include "formsym/abelian_group.hpp"
#include "formsym/anomaly.hpp"
#include "formsym/colimit.hpp"
#include "formsym/complex.hpp"
#include "formsym/covers.hpp"
#include "formsym/error.hpp"
#include "formsym/finite_group.hpp"
#include "formsym/group_ring.hpp"
#include "formsym/homology.hpp"
#include "formsym/io.hpp"
#include "formsym/library.hpp"
#include "formsym/matrix.hpp"
#include "formsym/smith.hpp"
#include "formsym/symmetry.hpp"
