#pragma once

#include "abcover/errors.hpp"
#include "abcover/picard.hpp"
#include "abcover/group.hpp"
#include "abcover/cover.hpp"
#include "abcover/invariants.hpp"
#include "abcover/canonical.hpp"
#include "abcover/catalog.hpp"
