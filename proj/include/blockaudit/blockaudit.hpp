#pragma once

#include "blockaudit/audit.hpp"
#include "blockaudit/bigint.hpp"
#include "blockaudit/bounds.hpp"
#include "blockaudit/combinatorics.hpp"
#include "blockaudit/exceptional.hpp"
#include "blockaudit/interval.hpp"
#include "blockaudit/lie_blocks.hpp"
#include "blockaudit/oracle.hpp"
#include "blockaudit/roots.hpp"
#include "blockaudit/symalt.hpp"
#include "blockaudit/sweep.hpp"
#include "blockaudit/wreath.hpp"
