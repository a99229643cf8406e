# Oracle package
