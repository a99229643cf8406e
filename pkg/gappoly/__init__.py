# Gap polynomial package
