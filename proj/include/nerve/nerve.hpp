#pragma once

#include "nerve/classifying.hpp"
#include "nerve/complex.hpp"
#include "nerve/derham_torus.hpp"
#include "nerve/elimination.hpp"
#include "nerve/error.hpp"
#include "nerve/exterior.hpp"
#include "nerve/group.hpp"
#include "nerve/group_spec.hpp"
#include "nerve/identities.hpp"
#include "nerve/quasi_iso.hpp"
#include "nerve/report.hpp"
#include "nerve/ring.hpp"
#include "nerve/simplicial.hpp"
#include "nerve/smith.hpp"
#include "nerve/sparse_matrix.hpp"
