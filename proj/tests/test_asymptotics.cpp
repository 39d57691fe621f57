#include "doctest.h"
#include "ryd/asymptotics.hpp"
