// check registry
